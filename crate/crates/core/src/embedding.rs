//! Embeddings of finite lower bounded lattices into closure lattices
//! `Co(Qⁿ, Ω)`, built from a norm on a colored tree and checked exhaustively.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::geometry::{
    closure, d_relation_geometry, d_relation_geometry_lp, extreme_points, is_plenary, join, meet, ClosedSet,
    GeometryError, PlenaryVerdict, Point, PointConfig, EXHAUSTIVE_LIMIT,
};
use crate::lattice::covers::find_cycle;
use crate::lattice::{Elem, FiniteLattice, LatticeError, LatticeSpec};
use crate::quotient::{build_quotient, integer_scale, QuotientError};
use crate::tree::{build_tree_lb, norm_check, ColoredTree, Norm, NormReport, TreeError, TreeExport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("the map e is not a norm")]
    NotANorm(NormReport),
    #[error("image of {element:?} is not closed")]
    NotClosed { element: String },
    #[error("embedding check failed")]
    Verification(EmbeddingReport),
    #[error("the closure lattice of Ω has a D-cycle {0:?}")]
    GeometryNotLowerBounded(Vec<String>),
    #[error("geometric D-pair ({0:?}, {1:?}) does not follow the tree order")]
    DDirection(String, String),
    #[error("Ω failed the plenary check")]
    NotPlenary(PlenaryVerdict),
    #[error("{element:?} is not the join of the norm values below it")]
    NotFull { element: String },
}

/// `ψ(x) = {p : e(p) ≤ x}` as indices into `Ω` (which is indexed like `t`).
pub fn psi(
    l: &FiniteLattice,
    t: &ColoredTree,
    e: &Norm,
    omega: &PointConfig,
    x: Elem,
) -> Result<ClosedSet, EmbeddingError> {
    let members: Vec<usize> = (0..t.len()).filter(|&p| l.leq(e.value(p), x)).collect();
    let closed = closure(omega, &members);
    if closed.members() != members.as_slice() {
        return Err(EmbeddingError::NotClosed { element: l.name(x).to_string() });
    }
    Ok(closed)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub x: String,
    pub y: String,
    pub expected: Vec<usize>,
    pub found: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub join_hom: bool,
    pub meet_preserving: bool,
    pub order_reflecting: bool,
    pub zero_preserving: bool,
    pub witnesses: Vec<Witness>,
}

impl EmbeddingReport {
    pub fn all_pass(&self) -> bool {
        self.join_hom && self.meet_preserving && self.order_reflecting && self.zero_preserving
    }
}

/// Exhaustive check over `L × L`; the first failure of each kind is kept.
pub fn verify_embedding(l: &FiniteLattice, omega: &PointConfig, assignment: &[ClosedSet]) -> EmbeddingReport {
    assert_eq!(assignment.len(), l.len(), "assignment must be total");
    let mut report =
        EmbeddingReport { join_hom: true, meet_preserving: true, order_reflecting: true, zero_preserving: true, witnesses: Vec::new() };
    let name = |x: Elem| l.name(x).to_string();
    if !assignment[l.bottom()].is_empty() {
        report.zero_preserving = false;
        report.witnesses.push(Witness {
            check: "zero".into(),
            x: name(l.bottom()),
            y: name(l.bottom()),
            expected: Vec::new(),
            found: assignment[l.bottom()].members().to_vec(),
        });
    }
    for x in l.elements() {
        for y in l.elements() {
            let want = &assignment[l.join(x, y)];
            let got = join(omega, &assignment[x], &assignment[y]);
            if report.join_hom && &got != want {
                report.join_hom = false;
                report.witnesses.push(Witness {
                    check: "join".into(),
                    x: name(x),
                    y: name(y),
                    expected: want.members().to_vec(),
                    found: got.members().to_vec(),
                });
            }
            let want = &assignment[l.meet(x, y)];
            let got = meet(&assignment[x], &assignment[y]);
            if report.meet_preserving && &got != want {
                report.meet_preserving = false;
                report.witnesses.push(Witness {
                    check: "meet".into(),
                    x: name(x),
                    y: name(y),
                    expected: want.members().to_vec(),
                    found: got.members().to_vec(),
                });
            }
            if report.order_reflecting && l.leq(x, y) != assignment[x].is_subset(&assignment[y]) {
                report.order_reflecting = false;
                report.witnesses.push(Witness {
                    check: "order".into(),
                    x: name(x),
                    y: name(y),
                    expected: assignment[x].members().to_vec(),
                    found: assignment[y].members().to_vec(),
                });
            }
        }
    }
    report
}

/// Point D-relation of a configuration, exhaustive when small enough.
pub fn geometric_d_relation(omega: &PointConfig) -> Vec<(usize, usize)> {
    if omega.len() <= EXHAUSTIVE_LIMIT {
        d_relation_geometry(omega).expect("within the exhaustive bound")
    } else {
        d_relation_geometry_lp(omega)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub lattice: LatticeSpec,
    pub tree: TreeExport,
    pub dimension: usize,
    /// The integer `m` with `Ω = m·Ω_T`.
    pub scale: Rational,
    pub omega: PointConfig,
    /// `Ω` index of each point, as tree node ids.
    pub point_nodes: Vec<String>,
    pub assignment: BTreeMap<String, ClosedSet>,
    /// Vertices of `conv(ψ(x))`, the polytope image of each element.
    pub polytopes: BTreeMap<String, Vec<Point>>,
    pub report: EmbeddingReport,
    pub d_relation: Vec<[String; 2]>,
    pub lower_bounded_geometry: bool,
    pub d_follows_tree_order: bool,
    pub full_norm: bool,
    pub plenary: String,
    pub plenary_check: Option<PlenaryVerdict>,
}

/// Samples used to corroborate plenarity of emitted configurations.
pub const PLENARY_SAMPLES: usize = 32;

/// Runs the whole pipeline and returns a certificate whose checks all pass.
pub fn embed_lower_bounded(l: &FiniteLattice) -> Result<EmbeddingCertificate, EmbeddingError> {
    let (t, e) = build_tree_lb(l)?;
    let norm = norm_check(&t, &e, l);
    if !norm.is_norm() || !norm.full {
        return Err(EmbeddingError::NotANorm(norm));
    }
    for x in l.elements() {
        let below = (0..t.len()).map(|p| e.value(p)).filter(|&v| l.leq(v, x));
        if l.join_all(below) != x {
            return Err(EmbeddingError::NotFull { element: l.name(x).to_string() });
        }
    }
    let basis = build_quotient(&t)?;
    let omega_t = basis.omega(&t)?;
    let (m, omega) = integer_scale(&omega_t);
    let assignment: Vec<ClosedSet> =
        l.elements().map(|x| psi(l, &t, &e, &omega, x)).collect::<Result<_, _>>()?;
    let report = verify_embedding(l, &omega, &assignment);
    if !report.all_pass() {
        return Err(EmbeddingError::Verification(report));
    }
    let d = geometric_d_relation(&omega);
    if let Some(cycle) = find_cycle(omega.len(), &d) {
        return Err(EmbeddingError::GeometryNotLowerBounded(cycle.iter().map(|&p| t.id(p).to_string()).collect()));
    }
    if let Some(&(p, q)) = d.iter().find(|&&(p, q)| !t.is_strict_ancestor(p, q)) {
        return Err(EmbeddingError::DDirection(t.id(p).to_string(), t.id(q).to_string()));
    }
    let plenary_check = if omega.len() <= EXHAUSTIVE_LIMIT {
        let verdict = is_plenary(&omega, PLENARY_SAMPLES, 0)?;
        if matches!(verdict, PlenaryVerdict::NotPlenary { .. }) {
            return Err(EmbeddingError::NotPlenary(verdict));
        }
        Some(verdict)
    } else {
        None
    };

    let mut by_name = BTreeMap::new();
    let mut polytopes = BTreeMap::new();
    for x in l.elements() {
        let set = &assignment[x];
        polytopes.insert(l.name(x).to_string(), extreme_points(&omega.subset(set.members())));
        by_name.insert(l.name(x).to_string(), set.clone());
    }
    Ok(EmbeddingCertificate {
        lattice: l.to_spec(),
        tree: t.export(Some((&e, l))),
        dimension: basis.dimension(),
        scale: Rational::from(m),
        omega,
        point_nodes: (0..t.len()).map(|p| t.id(p).to_string()).collect(),
        assignment: by_name,
        polytopes,
        report,
        d_relation: d.iter().map(|&(p, q)| [t.id(p).to_string(), t.id(q).to_string()]).collect(),
        lower_bounded_geometry: true,
        d_follows_tree_order: true,
        full_norm: true,
        plenary: "by-construction".to_string(),
        plenary_check,
    })
}

impl EmbeddingCertificate {
    /// Re-derives the verification from the stored lattice, Ω and assignment.
    pub fn recheck(&self) -> Result<EmbeddingReport, EmbeddingError> {
        let l = FiniteLattice::from_spec(&self.lattice)?;
        let mut assignment = Vec::with_capacity(l.len());
        for x in l.elements() {
            let set = self
                .assignment
                .get(l.name(x))
                .ok_or_else(|| EmbeddingError::NotClosed { element: l.name(x).to_string() })?;
            self.omega.check_indices(set.members())?;
            if &closure(&self.omega, set.members()) != set {
                return Err(EmbeddingError::NotClosed { element: l.name(x).to_string() });
            }
            assignment.push(set.clone());
        }
        Ok(verify_embedding(&l, &self.omega, &assignment))
    }
}
