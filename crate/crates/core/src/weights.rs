//! Weight functions on finite rings, tabulated over every element, with
//! exhaustive checks of the weight axioms and of the egalitarian (E) and
//! homogeneous (H) conditions. All averages are exact rationals.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::algebra::{gl_order, GlOrderQuery, Matrix, PrimeField};
use crate::error::{Error, Result};
use crate::ring::{ElementClass, MatrixRing, Side};

pub type Rational = Ratio<i64>;

/// Largest ring that the exhaustive checks will tabulate.
pub const MAX_TABULATED_RING: usize = 10_000;

/// A finite ring small enough to enumerate.
pub trait FiniteRing {
    type Element: Clone + Ord + Hash + Debug + Serialize;

    fn elements(&self) -> Vec<Self::Element>;
    fn zero(&self) -> Self::Element;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn neg(&self, a: &Self::Element) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn name(&self) -> String;
}

impl FiniteRing for MatrixRing {
    type Element = Matrix;

    fn elements(&self) -> Vec<Matrix> {
        MatrixRing::elements(self)
    }
    fn zero(&self) -> Matrix {
        MatrixRing::zero(self)
    }
    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a + b
    }
    fn neg(&self, a: &Matrix) -> Matrix {
        -a
    }
    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a * b
    }
    fn name(&self) -> String {
        format!("M2(F{})", self.p())
    }
}

/// F_p as a ring; elements are residues.
impl FiniteRing for PrimeField {
    type Element = u32;

    fn elements(&self) -> Vec<u32> {
        (0..self.p()).collect()
    }
    fn zero(&self) -> u32 {
        0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (self.element(*a as u64).expect("residue") + self.element(*b as u64).expect("residue")).value()
    }
    fn neg(&self, a: &u32) -> u32 {
        (-self.element(*a as u64).expect("residue")).value()
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (self.element(*a as u64).expect("residue") * self.element(*b as u64).expect("residue")).value()
    }
    fn name(&self) -> String {
        format!("F{}", self.p())
    }
}

/// Rx for `Side::Left`, xR for `Side::Right`, sorted and deduplicated.
pub fn cyclic_submodule<R: FiniteRing>(ring: &R, x: &R::Element, side: Side) -> Vec<R::Element> {
    let mut out: Vec<R::Element> = ring
        .elements()
        .iter()
        .map(|r| match side {
            Side::Left => ring.mul(r, x),
            Side::Right => ring.mul(x, r),
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A weight function stored as a table over the whole ring.
#[derive(Clone, Debug)]
pub struct WeightFunction<R: FiniteRing> {
    name: String,
    ring: R,
    elements: Vec<R::Element>,
    table: BTreeMap<R::Element, Rational>,
}

impl<R: FiniteRing> WeightFunction<R> {
    pub fn tabulate(name: impl Into<String>, ring: R, f: impl Fn(&R::Element) -> Rational) -> Result<Self> {
        let elements = ring.elements();
        if elements.len() > MAX_TABULATED_RING {
            return Err(Error::BudgetExceeded {
                what: format!("tabulating a weight on {}", ring.name()),
                required: elements.len() as u128,
                budget: MAX_TABULATED_RING as u128,
            });
        }
        let table = elements.iter().map(|x| (x.clone(), f(x))).collect();
        Ok(Self {
            name: name.into(),
            ring,
            elements,
            table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn eval(&self, x: &R::Element) -> Rational {
        self.table[x]
    }

    /// Checks the four weight axioms over the whole ring, subadditivity over
    /// every ordered pair. Reports the first violation found.
    pub fn check_axioms(&self) -> WeightAxiomReport<R::Element> {
        let zero = self.ring.zero();
        let violation = self.first_violation(&zero);
        WeightAxiomReport {
            holds: violation.is_none(),
            violation,
        }
    }

    fn first_violation(&self, zero: &R::Element) -> Option<AxiomViolation<R::Element>> {
        let nil = Rational::from_integer(0);
        for x in &self.elements {
            let w = self.eval(x);
            if (w == nil) != (x == zero) {
                return Some(AxiomViolation::Definiteness { x: x.clone() });
            }
            if w < nil {
                return Some(AxiomViolation::Nonnegativity { x: x.clone() });
            }
            if w != self.eval(&self.ring.neg(x)) {
                return Some(AxiomViolation::Symmetry { x: x.clone() });
            }
        }
        for x in &self.elements {
            for y in &self.elements {
                if self.eval(&self.ring.add(x, y)) > self.eval(x) + self.eval(y) {
                    return Some(AxiomViolation::Subadditivity {
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
            }
        }
        None
    }

    /// Γ over the cyclic submodule generated by `x`.
    pub fn average_value(&self, x: &R::Element, side: Side) -> Result<AverageValueReport<R::Element>> {
        if *x == self.ring.zero() {
            return Err(Error::ZeroGenerator);
        }
        let module = cyclic_submodule(&self.ring, x, side);
        let sum = module
            .iter()
            .fold(Rational::from_integer(0), |acc, y| acc + self.eval(y));
        let cardinality = module.len();
        Ok(AverageValueReport {
            generator: x.clone(),
            side,
            cardinality,
            weight_sum: sum,
            gamma: sum / Rational::from_integer(cardinality as i64),
        })
    }

    /// Condition (E): one Γ for every nonzero generator. On failure the
    /// witnesses are the first generator and the first one whose Γ differs.
    pub fn egalitarian_check(&self, side: Side) -> EgalitarianReport<R::Element> {
        let zero = self.ring.zero();
        let gammas: Vec<_> = self
            .elements
            .iter()
            .filter(|x| **x != zero)
            .map(|x| self.average_value(x, side).expect("nonzero generator"))
            .collect();
        let witnesses = gammas.first().and_then(|first| {
            gammas
                .iter()
                .find(|g| g.gamma != first.gamma)
                .map(|other| (first.clone(), other.clone()))
        });
        EgalitarianReport {
            side,
            egalitarian: witnesses.is_none(),
            gamma: if witnesses.is_none() {
                gammas.first().map(|g| g.gamma)
            } else {
                None
            },
            gammas,
            witnesses,
        }
    }

    /// Condition (H) together with (E). Elements are grouped by the cyclic
    /// submodule they generate and the weight must be constant on each group.
    pub fn homogeneous_check(&self, side: Side) -> HomogeneityReport<R::Element> {
        let e = self.egalitarian_check(side);
        let mut groups: BTreeMap<Vec<R::Element>, R::Element> = BTreeMap::new();
        let mut h_witness = None;
        for x in &self.elements {
            let key = cyclic_submodule(&self.ring, x, side);
            match groups.get(&key) {
                Some(rep) if self.eval(rep) != self.eval(x) => {
                    h_witness = Some((rep.clone(), x.clone()));
                    break;
                }
                Some(_) => {}
                None => {
                    groups.insert(key, x.clone());
                }
            }
        }
        let h = h_witness.is_none();
        HomogeneityReport {
            side,
            e: e.egalitarian,
            h,
            homogeneous: e.egalitarian && h,
            h_witness,
            egalitarian: e,
        }
    }

    /// Flattened summary in the shape the CLI emits as JSON.
    pub fn report(&self, side: Side) -> WeightsReport<R::Element> {
        let hom = self.homogeneous_check(side);
        WeightsReport {
            weight_name: self.name.clone(),
            ring: self.ring.name(),
            side,
            e: hom.e,
            h: hom.h,
            homogeneous: hom.homogeneous,
            gamma_values: hom
                .egalitarian
                .gammas
                .iter()
                .map(|g| GammaValue {
                    generator: g.generator.clone(),
                    gamma_num: *g.gamma.numer(),
                    gamma_den: *g.gamma.denom(),
                })
                .collect(),
            witnesses: ReportWitnesses {
                egalitarian: hom
                    .egalitarian
                    .witnesses
                    .as_ref()
                    .map(|(a, b)| [a.generator.clone(), b.generator.clone()]),
                homogeneity: hom.h_witness.as_ref().map(|(a, b)| [a.clone(), b.clone()]),
            },
        }
    }
}

impl WeightFunction<MatrixRing> {
    /// w_R(A) = rank(A).
    pub fn rank_weight(ring: MatrixRing) -> Result<Self> {
        Self::tabulate("rank", ring, |a| Rational::from_integer(a.rank() as i64))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation<E> {
    /// w(x) = 0 must hold exactly when x = 0.
    Definiteness { x: E },
    Nonnegativity { x: E },
    /// w(x) != w(-x).
    Symmetry { x: E },
    /// w(x + y) > w(x) + w(y).
    Subadditivity { x: E, y: E },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightAxiomReport<E> {
    pub holds: bool,
    pub violation: Option<AxiomViolation<E>>,
}

fn ser_ratio<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AverageValueReport<E> {
    pub generator: E,
    pub side: Side,
    pub cardinality: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub weight_sum: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub gamma: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgalitarianReport<E> {
    pub side: Side,
    pub egalitarian: bool,
    /// The common Γ when (E) holds.
    pub gamma: Option<Rational>,
    pub gammas: Vec<AverageValueReport<E>>,
    pub witnesses: Option<(AverageValueReport<E>, AverageValueReport<E>)>,
}

impl<E> EgalitarianReport<E> {
    /// Γ = 1.
    pub fn normalized(&self) -> bool {
        self.gamma == Some(Rational::from_integer(1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityReport<E> {
    pub side: Side,
    pub e: bool,
    pub h: bool,
    pub homogeneous: bool,
    pub h_witness: Option<(E, E)>,
    pub egalitarian: EgalitarianReport<E>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaValue<E> {
    pub generator: E,
    pub gamma_num: i64,
    pub gamma_den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportWitnesses<E> {
    pub egalitarian: Option<[E; 2]>,
    pub homogeneity: Option<[E; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightsReport<E> {
    pub weight_name: String,
    pub ring: String,
    pub side: Side,
    #[serde(rename = "E")]
    pub e: bool,
    #[serde(rename = "H")]
    pub h: bool,
    pub homogeneous: bool,
    pub gamma_values: Vec<GammaValue<E>>,
    pub witnesses: ReportWitnesses<E>,
}

/// Closed form of the rank-weight average over all of M_2(F_p):
/// (2p^4 - p^3 - p^2 + p - 1) / p^4.
pub fn rank_weight_full_ring_average(p: u64) -> Rational {
    let p = p as i64;
    let p2 = p * p;
    let p4 = p2 * p2;
    Rational::new(2 * p4 - p2 * p - p2 + p - 1, p4)
}

/// Closed form of the rank-weight average over a minimal one-sided ideal:
/// (p^2 - 1) / p^2.
pub fn rank_weight_minimal_ideal_average(p: u64) -> Rational {
    let p2 = (p * p) as i64;
    Rational::new(p2 - 1, p2)
}

/// p^4 times the gap between the two averages above, (p^3 + 1)(p - 1);
/// it vanishes for no prime.
pub fn rank_weight_average_gap(p: u64) -> i64 {
    let p = p as i64;
    (p * p * p + 1) * (p - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitInvarianceReport {
    pub p: u32,
    pub units: usize,
    pub elements: usize,
    pub pairs_checked: usize,
    pub holds: bool,
    /// (U, A) with rank(UA) != rank(A).
    pub counterexample: Option<(Matrix, Matrix)>,
}

/// Budget on |GL(2,p)| * p^4 for [`unit_invariance_check`].
pub const UNIT_INVARIANCE_BUDGET: u128 = 10_000_000;

/// rank(UA) = rank(A) for every unit U and every A in M_2(F_p).
pub fn unit_invariance_check(ring: &MatrixRing) -> Result<UnitInvarianceReport> {
    let p = ring.p() as u64;
    let required = gl_order(GlOrderQuery::new(p, 2)?)? * ring.order() as u128;
    if required > UNIT_INVARIANCE_BUDGET {
        return Err(Error::BudgetExceeded {
            what: format!("unit invariance over M2(F{p})"),
            required,
            budget: UNIT_INVARIANCE_BUDGET,
        });
    }
    let all = ring.elements();
    let units: Vec<&Matrix> = all
        .iter()
        .filter(|u| ring.classify(u) == ElementClass::Unit)
        .collect();
    let mut pairs = 0;
    let mut counterexample = None;
    'outer: for u in &units {
        for a in &all {
            pairs += 1;
            if (*u * a).rank() != a.rank() {
                counterexample = Some(((*u).clone(), a.clone()));
                break 'outer;
            }
        }
    }
    Ok(UnitInvarianceReport {
        p: ring.p(),
        units: units.len(),
        elements: all.len(),
        pairs_checked: pairs,
        holds: counterexample.is_none(),
        counterexample,
    })
}
