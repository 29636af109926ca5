//! Bounded complexes over additive tensor categories.
//!
//! Degrees are cohomological: `d^i: C^i -> C^{i+1}`. Shift is
//! `(C[n])^i = C^{i+n}` with differential `(-1)^n d`, and the cone of
//! `f: A -> B` is `B^i ⊕ A^{i+1}` with differential `[[d_B, f], [0, -d_A]]`.

mod cohomology;
mod complex;
mod thick;

use alloc::sync::Arc;
use core::fmt::Debug;

pub use cohomology::{cohomology, cohomology_dims, normalize_hereditary, Cohomology, CohomologyPiece, GradedDims, GradedObject};
pub use complex::{ChainMap, Complex};
pub use thick::{
    cone_summands, quotient_hom_bounded, random_complex, thick_closure, ClosureBudget, ClosureResult, ConeTable, QuotientHom,
    Roof, ShiftedMorphism,
};

use crate::linalg::{Field, Matrix};
use crate::quiver::{Quiver, Rep, RepMorphism};

/// An additive category with a biadditive tensor product, as much of it as
/// complexes need.
pub trait Category: Clone + PartialEq + Debug {
    type Obj: Clone + PartialEq + Debug;
    type Mor: Clone + PartialEq + Debug;

    fn zero_object(&self) -> Self::Obj;
    fn unit(&self) -> Self::Obj;
    fn is_zero_object(&self, a: &Self::Obj) -> bool;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn zero_morphism(&self, src: &Self::Obj, tgt: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn neg(&self, f: &Self::Mor) -> Self::Mor;
    fn is_zero_morphism(&self, f: &Self::Mor) -> bool;
    fn direct_sum(&self, objs: &[Self::Obj]) -> Self::Obj;
    /// The morphism `⊕ src -> ⊕ tgt` whose `(i, j)` block `src[j] -> tgt[i]`
    /// is `blocks(i, j)`, zero when `None`.
    fn block(&self, src: &[Self::Obj], tgt: &[Self::Obj], blocks: &dyn Fn(usize, usize) -> Option<Self::Mor>) -> Self::Mor;
    fn tensor(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn tensor_morphisms(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
}

/// Finite-dimensional representations of an acyclic quiver over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepCategory {
    pub quiver: Arc<Quiver>,
    pub field: Field,
}

impl RepCategory {
    pub fn new(quiver: Arc<Quiver>, field: Field) -> Self {
        RepCategory { quiver, field }
    }

    /// Vector spaces: representations of the one-vertex quiver.
    pub fn vector_spaces(field: Field) -> Self {
        RepCategory { quiver: Arc::new(Quiver::discrete(1)), field }
    }

    /// `k^n` as an object of [`RepCategory::vector_spaces`].
    pub fn space(&self, n: usize) -> Rep {
        Rep::with_zero_maps(self.quiver.clone(), self.field, alloc::vec![n])
    }
}

impl Category for RepCategory {
    type Obj = Rep;
    type Mor = RepMorphism;

    fn zero_object(&self) -> Rep {
        Rep::zero(self.quiver.clone(), self.field)
    }

    fn unit(&self) -> Rep {
        Rep::unit(self.quiver.clone(), self.field)
    }

    fn is_zero_object(&self, a: &Rep) -> bool {
        a.is_zero()
    }

    fn identity(&self, a: &Rep) -> RepMorphism {
        RepMorphism::identity(a)
    }

    fn zero_morphism(&self, src: &Rep, tgt: &Rep) -> RepMorphism {
        RepMorphism::zero(src, tgt)
    }

    fn compose(&self, g: &RepMorphism, f: &RepMorphism) -> RepMorphism {
        g.compose(f)
    }

    fn add(&self, f: &RepMorphism, g: &RepMorphism) -> RepMorphism {
        f.add(g)
    }

    fn neg(&self, f: &RepMorphism) -> RepMorphism {
        f.neg()
    }

    fn is_zero_morphism(&self, f: &RepMorphism) -> bool {
        f.is_zero()
    }

    fn direct_sum(&self, objs: &[Rep]) -> Rep {
        if objs.is_empty() {
            return self.zero_object();
        }
        Rep::direct_sum(objs).expect("objects of one category")
    }

    fn block(&self, src: &[Rep], tgt: &[Rep], blocks: &dyn Fn(usize, usize) -> Option<RepMorphism>) -> RepMorphism {
        let n = self.quiver.num_vertices();
        let comps = (0..n)
            .map(|v| {
                let rows: usize = tgt.iter().map(|t| t.dim(v)).sum();
                let cols: usize = src.iter().map(|s| s.dim(v)).sum();
                let mut m = Matrix::zeros(self.field, rows, cols);
                let mut r0 = 0;
                for (i, t) in tgt.iter().enumerate() {
                    let mut c0 = 0;
                    for (j, s) in src.iter().enumerate() {
                        if let Some(b) = blocks(i, j) {
                            m.set_block(r0, c0, &b.comps[v]);
                        }
                        c0 += s.dim(v);
                    }
                    r0 += t.dim(v);
                }
                m
            })
            .collect();
        RepMorphism { comps }
    }

    fn tensor(&self, a: &Rep, b: &Rep) -> Rep {
        a.tensor(b).expect("objects of one category")
    }

    fn tensor_morphisms(&self, f: &RepMorphism, g: &RepMorphism) -> RepMorphism {
        RepMorphism { comps: f.comps.iter().zip(&g.comps).map(|(a, b)| a.kronecker(b)).collect() }
    }
}
