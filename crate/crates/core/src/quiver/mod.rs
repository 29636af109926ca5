//! Finite quivers, their paths and finite-dimensional representations.

mod decompose;
mod indecomposables;
mod rep;

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use decompose::{decompose, is_indecomposable, DecomposeStatus, Decomposition};
pub use indecomposables::{exhaustive_indecomposables, interval_module, list_indecomposables, Completeness, Indecomposables};
pub use rep::{ext1, hom_space, is_isomorphic, Ext1, IsoVerdict, Rep, RepMorphism};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path `source -> target`; `arrows` lists arrow indices in the order they
/// are traversed. The trivial path at `v` has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self · other`: first `other`, then `self`. `None` unless
    /// `other.target == self.source`.
    pub fn after(&self, other: &Path) -> Option<Path> {
        if other.target != self.source {
            return None;
        }
        let mut arrows = other.arrows.clone();
        arrows.extend(self.arrows.iter().copied());
        Some(Path { source: other.source, target: self.target, arrows })
    }

    /// Written in composition order, e.g. `b*a` for `a` followed by `b`,
    /// and `e_v` for trivial paths.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return alloc::format!("e_{}", q.vertices[self.source]);
        }
        let labels: Vec<&str> = self.arrows.iter().rev().map(|&a| q.arrows[a].label.as_str()).collect();
        labels.join("*")
    }
}

impl Quiver {
    /// Build a quiver from vertex labels and `(source, target, label)` arrows.
    /// Acyclicity is not required here; see [`Quiver::topological_order`].
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let index = |name: &str| {
            vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut out = Vec::new();
        for (s, t, l) in arrows {
            let label = l.as_ref().to_string();
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            out.push(Arrow { source: index(s.as_ref())?, target: index(t.as_ref())?, label });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    /// `n` vertices `1..=n` with no arrows.
    pub fn discrete(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| alloc::format!("{i}")).collect();
        Quiver { vertices, arrows: Vec::new() }
    }

    /// Type `A_n` on vertices `1..=n`; `forward[i]` orients the edge between
    /// `i+1` and `i+2` as `i+1 -> i+2`, otherwise backwards. Arrows are
    /// labelled `a`, `b`, `c`, ...
    pub fn type_a(forward: &[bool]) -> Self {
        let n = forward.len() + 1;
        let vertices: Vec<String> = (1..=n).map(|i| alloc::format!("{i}")).collect();
        let arrows = forward
            .iter()
            .enumerate()
            .map(|(i, &fw)| {
                let label = arrow_label(i);
                if fw {
                    Arrow { source: i, target: i + 1, label }
                } else {
                    Arrow { source: i + 1, target: i, label }
                }
            })
            .collect();
        Quiver { vertices, arrows }
    }

    /// Equioriented `A_n`: `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        assert!(n >= 1);
        Self::type_a(&alloc::vec![true; n - 1])
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// A topological order of the vertices, or the labels along an oriented cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = alloc::vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    ready.insert(a.target);
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        Err(Error::Cycle(self.find_cycle(&indeg).into_iter().map(|v| self.vertices[v].clone()).collect()))
    }

    /// Walk backwards through vertices that still have unresolved in-arrows
    /// until a vertex repeats.
    fn find_cycle(&self, indeg: &[usize]) -> Vec<usize> {
        let start = (0..self.vertices.len()).find(|&v| indeg[v] > 0).unwrap_or(0);
        let mut walk = alloc::vec![start];
        let mut cur = start;
        loop {
            let prev = self
                .arrows
                .iter()
                .find(|a| a.target == cur && indeg[a.source] > 0)
                .map(|a| a.source)
                .expect("vertex with positive in-degree has an unresolved predecessor");
            if let Some(pos) = walk.iter().position(|&v| v == prev) {
                let mut cycle: Vec<usize> = walk[pos..].to_vec();
                cycle.reverse();
                let first = cycle.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i).unwrap_or(0);
                cycle.rotate_left(first);
                return cycle;
            }
            walk.push(prev);
            cur = prev;
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    /// All paths, trivial ones included, sorted by (length, source, arrows).
    pub fn paths(&self) -> Result<Vec<Path>> {
        self.topological_order()?;
        let mut out: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: p.source, target: a.target, arrows });
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }

    /// Vertex order along the underlying line when the underlying graph is a
    /// simple path (type `A_n`, any orientation); `None` otherwise.
    pub fn type_a_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        if n == 0 || self.arrows.len() != n - 1 {
            return None;
        }
        let mut nbrs: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        for a in &self.arrows {
            if a.source == a.target || nbrs[a.source].contains(&a.target) {
                return None;
            }
            nbrs[a.source].push(a.target);
            nbrs[a.target].push(a.source);
        }
        if nbrs.iter().any(|v| v.len() > 2) {
            return None;
        }
        let start = if n == 1 { 0 } else { (0..n).find(|&v| nbrs[v].len() == 1)? };
        let mut order = alloc::vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < n {
            let next = *nbrs[cur].iter().find(|&&w| w != prev)?;
            prev = cur;
            cur = next;
            order.push(cur);
        }
        Some(order)
    }

    /// The full subquiver on the given vertices, with the inclusion maps for
    /// vertices and arrows (indices into `self`).
    pub fn full_subquiver(&self, keep: &[usize]) -> Result<(Quiver, Vec<usize>, Vec<usize>)> {
        let mut verts: Vec<usize> = keep.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if verts.iter().any(|&v| v >= self.vertices.len()) {
            return Err(Error::UnknownVertex(alloc::format!("{verts:?}")));
        }
        let vertices = verts.iter().map(|&v| self.vertices[v].clone()).collect();
        let mut arrows = Vec::new();
        let mut arrow_map = Vec::new();
        for (ai, a) in self.arrows.iter().enumerate() {
            let (Some(s), Some(t)) = (verts.iter().position(|&v| v == a.source), verts.iter().position(|&v| v == a.target))
            else {
                continue;
            };
            arrows.push(Arrow { source: s, target: t, label: a.label.clone() });
            arrow_map.push(ai);
        }
        Ok((Quiver { vertices, arrows }, verts, arrow_map))
    }

    /// Euler form `<x, y> = Σ_v x_v y_v - Σ_{a: i->j} x_i y_j`.
    pub fn euler_form(&self, x: &[usize], y: &[usize]) -> i64 {
        let diag: i64 = x.iter().zip(y).map(|(&a, &b)| (a * b) as i64).sum();
        let off: i64 = self.arrows.iter().map(|a| (x[a.source] * y[a.target]) as i64).sum();
        diag - off
    }

    /// Is `perm` (a vertex permutation) an automorphism? Returns the induced
    /// arrow permutation when it is.
    pub fn automorphism_arrows(&self, perm: &[usize]) -> Result<Vec<usize>> {
        let n = self.vertices.len();
        let mut seen = alloc::vec![false; n];
        if perm.len() != n || perm.iter().any(|&v| v >= n || core::mem::replace(&mut seen[v], true)) {
            return Err(Error::NotAnAutomorphism);
        }
        let mut used = alloc::vec![false; self.arrows.len()];
        let mut map = Vec::with_capacity(self.arrows.len());
        for a in &self.arrows {
            let img = self
                .arrows
                .iter()
                .enumerate()
                .position(|(bi, b)| !used[bi] && b.source == perm[a.source] && b.target == perm[a.target])
                .ok_or(Error::NotAnAutomorphism)?;
            used[img] = true;
            map.push(img);
        }
        Ok(map)
    }
}

fn arrow_label(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        alloc::format!("a{i}")
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q0={:?}", self.vertices)?;
        for a in &self.arrows {
            write!(f, " {}:{}->{}", a.label, self.vertices[a.source], self.vertices[a.target])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topological_orders() {
        assert_eq!(Quiver::linear(1).topological_order().unwrap(), alloc::vec![0]);
        assert_eq!(Quiver::linear(2).topological_order().unwrap(), alloc::vec![0, 1]);
        let q = Quiver::new(&["v1", "v2"], &[("v1", "v2", "a"), ("v2", "v1", "b")]).unwrap();
        assert_eq!(q.topological_order(), Err(Error::Cycle(alloc::vec!["v1".into(), "v2".into()])));
    }

    #[test]
    fn topological_order_respects_arrows() {
        let q = Quiver::type_a(&[false, true, false]);
        let order = q.topological_order().unwrap();
        for a in q.arrows() {
            let s = order.iter().position(|&v| v == a.source).unwrap();
            let t = order.iter().position(|&v| v == a.target).unwrap();
            assert!(s < t);
        }
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Quiver::new(&["a", "a"], &[]).is_err());
        assert!(Quiver::new(&["x", "y"], &[("x", "y", "x")]).is_err());
        assert!(Quiver::new(&["x"], &[("x", "z", "a")]).is_err());
    }

    #[test]
    fn path_counts() {
        assert_eq!(Quiver::linear(1).paths().unwrap().len(), 1);
        let a2 = Quiver::linear(2).paths().unwrap();
        assert_eq!(a2.len(), 3);
        let a3 = Quiver::linear(3).paths().unwrap();
        assert_eq!(a3.len(), 6);
        assert_eq!(a3.iter().filter(|p| p.len() == 0).count(), 3);
        assert_eq!(a3.iter().filter(|p| p.len() == 1).count(), 2);
        assert_eq!(a3.iter().filter(|p| p.len() == 2).count(), 1);
        let q = Quiver::linear(3);
        assert_eq!(a3.last().unwrap().display(&q), "b*a");
        // zigzag 1 -> 2 <- 3 has no length-2 path
        assert_eq!(Quiver::type_a(&[true, false]).paths().unwrap().len(), 5);
    }

    #[test]
    fn path_composition() {
        let q = Quiver::linear(3);
        let ps = q.paths().unwrap();
        let a = ps.iter().find(|p| p.arrows == [0]).unwrap();
        let b = ps.iter().find(|p| p.arrows == [1]).unwrap();
        assert_eq!(b.after(a).unwrap().arrows, alloc::vec![0, 1]);
        assert!(a.after(b).is_none());
        assert_eq!(a.after(&Path::trivial(0)).unwrap(), a.clone());
    }

    #[test]
    fn type_a_detection() {
        assert_eq!(Quiver::type_a(&[true, false]).type_a_order(), Some(alloc::vec![0, 1, 2]));
        let kronecker = Quiver::new(&["1", "2"], &[("1", "2", "a"), ("1", "2", "b")]).unwrap();
        assert_eq!(kronecker.type_a_order(), None);
        assert_eq!(Quiver::discrete(2).type_a_order(), None);
        assert_eq!(Quiver::discrete(1).type_a_order(), Some(alloc::vec![0]));
    }

    #[test]
    fn automorphisms() {
        assert!(Quiver::discrete(2).automorphism_arrows(&[1, 0]).is_ok());
        assert!(Quiver::linear(2).automorphism_arrows(&[1, 0]).is_err());
        assert!(Quiver::linear(2).automorphism_arrows(&[0, 0]).is_err());
    }
}
