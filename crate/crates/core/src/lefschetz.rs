//! Coincidence classes of k maps into a manifold.
//!
//! Three computable models are supported:
//!
//! * tori, where each map is known through its first-homology matrix and the
//!   pair class `L(f₁, f_i)` is the pullback of the target's top class along
//!   the difference matrix `A_i − A₁`; the k-map class is the cup product of
//!   the pair classes for `i = 2, …, k`, evaluated on `[T^m] = e^{1..m}`;
//! * spheres, where the class is a signed sum of the pulled-back top classes
//!   of the (k-1)-fold sub-tuples;
//! * declared cohomology facts, which can only force a class to vanish.

use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::ExteriorElement;
use crate::matrix::IntegerMatrix;
use crate::solver::AffineTorusMap;

/// First-homology matrices A₁, …, A_k (each `n × m`) of maps T^m → T^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusMapModel {
    n: usize,
    m: usize,
    matrices: Vec<IntegerMatrix>,
}

impl TorusMapModel {
    pub fn new(matrices: Vec<IntegerMatrix>) -> Result<Self> {
        if matrices.len() < 2 {
            return Err(Error::DimensionMismatch(format!(
                "need at least 2 maps, got {}",
                matrices.len()
            )));
        }
        let (n, m) = (matrices[0].rows(), matrices[0].cols());
        if let Some((i, a)) = matrices
            .iter()
            .enumerate()
            .find(|(_, a)| a.rows() != n || a.cols() != m)
        {
            return Err(Error::DimensionMismatch(format!(
                "matrix {} is {}x{}, matrix 1 is {n}x{m}",
                i + 1,
                a.rows(),
                a.cols()
            )));
        }
        Ok(Self { n, m, matrices })
    }

    pub fn from_affine(maps: &[AffineTorusMap]) -> Result<Self> {
        Self::new(maps.iter().map(|f| f.matrix().clone()).collect())
    }

    pub fn k(&self) -> usize {
        self.matrices.len()
    }

    pub fn source_dim(&self) -> usize {
        self.m
    }

    pub fn target_dim(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[IntegerMatrix] {
        &self.matrices
    }

    /// `A_i − A₁` for a 1-based map index `i ≥ 2`.
    pub fn difference(&self, i: usize) -> Result<IntegerMatrix> {
        self.check_pair_index(i)?;
        self.matrices[i - 1].checked_sub(&self.matrices[0])
    }

    fn check_pair_index(&self, i: usize) -> Result<()> {
        if i < 2 || i > self.k() {
            return Err(Error::IndexOutOfRange { index: i, lo: 2, hi: self.k() });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassKind {
    /// Value against the chosen fundamental class.
    Integer(i64),
    /// Known to vanish, with the reason.
    Zero { reason: String },
    Unknown { reason: String },
}

/// A computed coincidence class together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassValue {
    pub kind: ClassKind,
    pub provenance: String,
}

impl ClassValue {
    pub fn integer(value: i64, provenance: impl Into<String>) -> Self {
        Self { kind: ClassKind::Integer(value), provenance: provenance.into() }
    }

    pub fn zero(reason: impl Into<String>, provenance: impl Into<String>) -> Self {
        Self {
            kind: ClassKind::Zero { reason: reason.into() },
            provenance: provenance.into(),
        }
    }

    pub fn unknown(reason: impl Into<String>, provenance: impl Into<String>) -> Self {
        Self {
            kind: ClassKind::Unknown { reason: reason.into() },
            provenance: provenance.into(),
        }
    }

    /// `Zero` or `Integer(0)`.
    pub fn is_vanishing(&self) -> bool {
        matches!(self.kind, ClassKind::Zero { .. } | ClassKind::Integer(0))
    }

    /// The value when it is a certified nonzero integer.
    pub fn nonzero_value(&self) -> Option<i64> {
        match self.kind {
            ClassKind::Integer(v) if v != 0 => Some(v),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ClassKind::Integer(_) => "integer",
            ClassKind::Zero { .. } => "zero",
            ClassKind::Unknown { .. } => "unknown",
        }
    }
}

impl fmt::Display for ClassValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ClassKind::Integer(v) => write!(f, "{v}"),
            ClassKind::Zero { reason } => write!(f, "0 ({reason})"),
            ClassKind::Unknown { reason } => write!(f, "unknown ({reason})"),
        }
    }
}

pub const TORUS_PROVENANCE: &str =
    "cup product of pair classes L(f1,fi), i=2..k, evaluated on the fundamental class e^{1..m}";
pub const SPHERE_PROVENANCE: &str =
    "sphere degree sum over the (k-1)-fold sub-tuples omitting one map";

/// Pair class `L(f₁, f_i)` in H^n(T^m): the pullback of e^{1..n} along
/// `A_i − A₁`.
pub fn pair_class_torus(model: &TorusMapModel, i: usize) -> Result<ExteriorElement> {
    let d = model.difference(i)?;
    let top = ExteriorElement::top(model.n)?;
    ExteriorElement::pullback(&d, &top)
}

/// The k-map class `L(f₁,f₂) ∪ … ∪ L(f₁,f_k)` evaluated on [T^m].
pub fn multi_class_torus(model: &TorusMapModel) -> Result<ClassValue> {
    let k = model.k();
    if model.m != (k - 1) * model.n {
        return Err(Error::DimensionMismatch(format!(
            "source dimension {} must equal (k-1)n = {}",
            model.m,
            (k - 1) * model.n
        )));
    }
    let mut product = ExteriorElement::one(model.m)?;
    for i in 2..=k {
        let factor = pair_class_torus(model, i)?;
        if factor.is_zero() {
            return Ok(ClassValue::integer(0, TORUS_PROVENANCE));
        }
        product = product.wedge(&factor)?;
    }
    Ok(ClassValue::integer(product.top_coefficient(), TORUS_PROVENANCE))
}

/// Coincidence class for k maps into S^n from the integers
/// `hat_degrees[j-1] = d_j`, the pulled-back top class of the sub-tuple that
/// omits f_j. Computes `Σ_{i=0}^{k-1} (-1)^{i·n} d_{k-i}`, so for k = 2 the
/// value is `d₂ + (-1)^n d₁`.
pub fn sphere_class(n: usize, k: usize, hat_degrees: &[i64]) -> Result<ClassValue> {
    if n < 1 {
        return Err(Error::InvalidInput("sphere dimension must be at least 1".into()));
    }
    if k < 2 {
        return Err(Error::InvalidInput(format!("k must be at least 2, got {k}")));
    }
    if hat_degrees.len() != k {
        return Err(Error::ArityMismatch { expected: k, found: hat_degrees.len() });
    }
    let mut total: i64 = 0;
    for i in 0..k {
        let d = hat_degrees[k - i - 1];
        let term = if (i * n).is_multiple_of(2) { Some(d) } else { d.checked_neg() };
        total = term
            .and_then(|t| total.checked_add(t))
            .ok_or(Error::IntegerOverflow("sphere class"))?;
    }
    Ok(ClassValue::integer(total, SPHERE_PROVENANCE))
}

/// A cohomological statement the caller vouches for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactStatement {
    /// f^*([N]) = 0 for the named map.
    PullbackOfFundamentalClassVanishes { map: String },
    /// H^degree(space) = 0.
    CohomologyGroupVanishes { space: String, degree: usize },
    /// L(f_i, f_j) = 0, 1-based indices.
    PairClassZero { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyFact {
    pub statement: FactStatement,
    pub justification: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub id: String,
    pub constant: bool,
}

/// Identifiers that facts may refer to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactContext {
    pub source: String,
    pub target: String,
    /// Dimension of the target manifold.
    pub n: usize,
    /// f₁, …, f_k in order.
    pub maps: Vec<MapDecl>,
}

impl FactContext {
    pub fn k(&self) -> usize {
        self.maps.len()
    }

    fn map_position(&self, id: &str) -> Option<usize> {
        self.maps.iter().position(|m| m.id == id)
    }

    fn validate(&self, fact: &CohomologyFact) -> Result<()> {
        match &fact.statement {
            FactStatement::PullbackOfFundamentalClassVanishes { map } => {
                if self.map_position(map).is_none() {
                    return Err(Error::UnknownIdentifier(format!("map {map:?}")));
                }
            }
            FactStatement::CohomologyGroupVanishes { space, .. } => {
                if *space != self.source && *space != self.target {
                    return Err(Error::UnknownIdentifier(format!("space {space:?}")));
                }
            }
            FactStatement::PairClassZero { i, j } => {
                for idx in [*i, *j] {
                    if idx < 1 || idx > self.k() {
                        return Err(Error::UnknownIdentifier(format!(
                            "map index {idx} (maps are numbered 1..={})",
                            self.k()
                        )));
                    }
                }
                if i == j {
                    return Err(Error::InvalidInput(format!("pair class L(f{i},f{j}) repeats a map")));
                }
            }
        }
        Ok(())
    }
}

/// Propagates declared facts through the product formula
/// `L(f₁,…,f_k) = L(f₁,f₂) ∪ … ∪ L(f₁,f_k)`: a single vanishing factor gives
/// `Zero`. Anything else is `Unknown`; a nonzero value is never produced.
pub fn class_from_facts(ctx: &FactContext, facts: &[CohomologyFact]) -> Result<ClassValue> {
    if ctx.k() < 2 {
        return Err(Error::InvalidInput(format!("k must be at least 2, got {}", ctx.k())));
    }
    for fact in facts {
        ctx.validate(fact)?;
    }
    let name = |i: usize| ctx.maps[i].id.as_str();
    for fact in facts {
        match &fact.statement {
            FactStatement::CohomologyGroupVanishes { space, degree }
                if *space == ctx.source && *degree == ctx.n =>
            {
                let stmt = format!("H^{degree}({space})=0");
                return Ok(ClassValue::zero(
                    format!("{stmt} forces all pair classes to vanish"),
                    stmt,
                ));
            }
            FactStatement::PullbackOfFundamentalClassVanishes { map } => {
                let first = &ctx.maps[0];
                let partner = (1..ctx.k()).find(|&i| {
                    let other = &ctx.maps[i];
                    (first.id == *map && other.constant) || (first.constant && other.id == *map)
                });
                if let Some(i) = partner {
                    let stmt = format!("{map}^*([{}])=0", ctx.target);
                    return Ok(ClassValue::zero(
                        format!(
                            "{stmt} kills the pair class L({},{}) of {map} with a constant map; \
                             the cup product vanishes",
                            name(0),
                            name(i)
                        ),
                        stmt,
                    ));
                }
            }
            FactStatement::PairClassZero { i, j } if *i == 1 || *j == 1 => {
                let other = if *i == 1 { *j } else { *i };
                let stmt = format!("L({},{})=0", name(0), name(other - 1));
                return Ok(ClassValue::zero(
                    format!("{stmt} is a factor of the cup product"),
                    stmt,
                ));
            }
            _ => {}
        }
    }
    Ok(ClassValue::unknown("insufficient facts", "declared cohomology facts"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(r: &[i64]) -> IntegerMatrix {
        IntegerMatrix::from_rows(&[r]).unwrap()
    }

    fn model(ms: &[&[i64]]) -> TorusMapModel {
        TorusMapModel::new(ms.iter().map(|r| rows(r)).collect()).unwrap()
    }

    #[test]
    fn equal_matrices_give_zero_pair_class() {
        let m = model(&[&[1, 2], &[1, 2], &[0, 1]]);
        assert!(pair_class_torus(&m, 2).unwrap().is_zero());
        assert_eq!(multi_class_torus(&m).unwrap().kind, ClassKind::Integer(0));
    }

    #[test]
    fn pair_class_is_difference_row() {
        let m = model(&[&[0, 0], &[2, 1], &[1, 1]]);
        let expect = ExteriorElement::from_terms(2, [(vec![1], 2), (vec![2], 1)]).unwrap();
        assert_eq!(pair_class_torus(&m, 2).unwrap(), expect);
        assert!(matches!(pair_class_torus(&m, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(pair_class_torus(&m, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn square_pair_class_is_determinant() {
        let a1 = IntegerMatrix::from_rows(&[[1, 2], [0, 1]]).unwrap();
        let a2 = IntegerMatrix::from_rows(&[[3, -1], [2, 2]]).unwrap();
        let m = TorusMapModel::new(vec![a1.clone(), a2.clone()]).unwrap();
        let det = a2.checked_sub(&a1).unwrap().determinant().unwrap();
        assert_eq!(pair_class_torus(&m, 2).unwrap().top_coefficient(), det);
    }

    #[test]
    fn multi_class_examples() {
        let m = model(&[&[0, 0], &[2, 1], &[1, 1]]);
        assert_eq!(multi_class_torus(&m).unwrap().kind, ClassKind::Integer(1));
        let m = model(&[&[0, 0], &[2, 0], &[0, 3]]);
        assert_eq!(multi_class_torus(&m).unwrap().kind, ClassKind::Integer(6));
        let m = model(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert!(matches!(multi_class_torus(&m), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_class(2, 2, &[3, 5]).unwrap().kind, ClassKind::Integer(8));
        assert_eq!(sphere_class(4, 3, &[1, -7, 4]).unwrap().kind, ClassKind::Integer(-2));
        assert_eq!(sphere_class(3, 3, &[0, 0, 0]).unwrap().kind, ClassKind::Integer(0));
        // odd n, k = 2: d2 - d1
        assert_eq!(sphere_class(1, 2, &[3, 5]).unwrap().kind, ClassKind::Integer(2));
        assert!(matches!(sphere_class(2, 3, &[1, 2]), Err(Error::ArityMismatch { .. })));
    }

    fn ctx(maps: &[(&str, bool)]) -> FactContext {
        FactContext {
            source: "X".into(),
            target: "N".into(),
            n: 2,
            maps: maps
                .iter()
                .map(|(id, c)| MapDecl { id: id.to_string(), constant: *c })
                .collect(),
        }
    }

    fn fact(statement: FactStatement) -> CohomologyFact {
        CohomologyFact { statement, justification: "given".into() }
    }

    #[test]
    fn top_degree_vanishing_forces_zero() {
        let c = ctx(&[("f1", false), ("f2", true), ("f3", false)]);
        let v = class_from_facts(
            &c,
            &[fact(FactStatement::CohomologyGroupVanishes { space: "X".into(), degree: 2 })],
        )
        .unwrap();
        assert_eq!(
            v.kind,
            ClassKind::Zero { reason: "H^2(X)=0 forces all pair classes to vanish".into() }
        );
        let v = class_from_facts(
            &c,
            &[fact(FactStatement::CohomologyGroupVanishes { space: "X".into(), degree: 3 })],
        )
        .unwrap();
        assert!(matches!(v.kind, ClassKind::Unknown { .. }));
    }

    #[test]
    fn pullback_vanishing_needs_constant_partner() {
        let f = [fact(FactStatement::PullbackOfFundamentalClassVanishes { map: "p".into() })];
        let c = ctx(&[("p", false), ("c", true)]);
        let v = class_from_facts(&c, &f).unwrap();
        assert!(v.is_vanishing());
        assert_eq!(v.provenance, "p^*([N])=0");
        let c = ctx(&[("c", true), ("g", false), ("p", false)]);
        assert!(class_from_facts(&c, &f).unwrap().is_vanishing());
        let c = ctx(&[("p", false), ("g", false)]);
        assert!(matches!(class_from_facts(&c, &f).unwrap().kind, ClassKind::Unknown { .. }));
    }

    #[test]
    fn pair_zero_only_through_base_map() {
        let c = ctx(&[("a", false), ("b", false), ("c", false)]);
        let v = class_from_facts(&c, &[fact(FactStatement::PairClassZero { i: 3, j: 1 })]).unwrap();
        assert_eq!(v.provenance, "L(a,c)=0");
        let v = class_from_facts(&c, &[fact(FactStatement::PairClassZero { i: 2, j: 3 })]).unwrap();
        assert!(matches!(v.kind, ClassKind::Unknown { .. }));
    }

    #[test]
    fn empty_facts_are_unknown() {
        let c = ctx(&[("a", false), ("b", false)]);
        let v = class_from_facts(&c, &[]).unwrap();
        assert_eq!(v.kind, ClassKind::Unknown { reason: "insufficient facts".into() });
    }

    #[test]
    fn unknown_identifiers_are_rejected() {
        let c = ctx(&[("a", false), ("b", false)]);
        for st in [
            FactStatement::PullbackOfFundamentalClassVanishes { map: "zz".into() },
            FactStatement::CohomologyGroupVanishes { space: "Y".into(), degree: 2 },
            FactStatement::PairClassZero { i: 1, j: 3 },
        ] {
            assert!(matches!(class_from_facts(&c, &[fact(st)]), Err(Error::UnknownIdentifier(_))));
        }
    }
}
