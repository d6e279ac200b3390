//! The theorem suite behind `gralift verify p`.
//!
//! Every check compares a closed-form or structural claim against an
//! exhaustive (or seeded random) recomputation. A [`Fault`] perturbs the
//! closed-form side of one check so tests can confirm the suite notices.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{gl_order, GlOrderQuery, Matrix};
use crate::catalog;
use crate::error::{Error, Result};
use crate::lifting::{lift_code, lift_subspace, verify_idempotent_ideal_lift};
use crate::rank_code::{
    random_linear_subcode, rank_distance, scan_rank_distribution, verify_delta_equals_omega,
    RankMetricCode,
};
use crate::ring::{MatrixRing, Side};
use crate::subspace::{
    enumerate_grassmannian, gaussian_coefficient, greedy_partial_spread, is_subspace_weight,
    subspace_weight_egalitarian_check, Subspace, SubspaceCode, DEFAULT_ENUMERATION_BUDGET,
};
use crate::weights::{
    rank_weight_full_ring_average, rank_weight_minimal_ideal_average, unit_invariance_check,
    Rational, WeightFunction,
};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Largest number of (A, B) pairs the transport check walks exhaustively.
const EXHAUSTIVE_PAIR_LIMIT: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fault {
    GlOrder,
    FullRingAverage,
    IdealAverage,
    LiftDistanceFactor,
    LiftParameters,
    GaussianCoefficient,
}

impl Fault {
    pub const ALL: [Fault; 6] = [
        Fault::GlOrder,
        Fault::FullRingAverage,
        Fault::IdealAverage,
        Fault::LiftDistanceFactor,
        Fault::LiftParameters,
        Fault::GaussianCoefficient,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::GlOrder => "gl-order",
            Fault::FullRingAverage => "gamma-full",
            Fault::IdealAverage => "gamma-ideal",
            Fault::LiftDistanceFactor => "lift-factor",
            Fault::LiftParameters => "lift-params",
            Fault::GaussianCoefficient => "gaussian",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown fault `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub p: u64,
    pub seed: u64,
    pub random_subcodes: usize,
    pub random_pairs: usize,
    pub fault: Option<Fault>,
}

impl VerifyConfig {
    pub fn new(p: u64) -> Self {
        Self {
            p,
            seed: DEFAULT_SEED,
            random_subcodes: 200,
            random_pairs: 10_000,
            fault: None,
        }
    }

    fn faulty(&self, f: Fault) -> bool {
        self.fault == Some(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub p: u64,
    pub seed: u64,
    pub fault: Option<String>,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Suite<'a> {
    cfg: &'a VerifyConfig,
    ring: MatrixRing,
    rng: ChaCha8Rng,
    checks: Vec<CheckOutcome>,
}

impl Suite<'_> {
    fn record(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    fn rank_distribution(&mut self) -> Result<()> {
        let p = self.cfg.p;
        let mut gl = gl_order(GlOrderQuery::new(p, 2)?)?;
        if self.cfg.faulty(Fault::GlOrder) {
            gl += 1;
        }
        let q4 = (p as u128).pow(4);
        let closed = [1, q4 - gl - 1, gl];
        let scanned = scan_rank_distribution(self.ring.field());
        self.record(
            "rank distribution",
            closed == scanned,
            format!("scan (A0,A1,A2) = {scanned:?}, closed form {closed:?}"),
        );
        Ok(())
    }

    fn delta_omega_ideals(&mut self) -> Result<()> {
        let mut checked = 0;
        let mut bad = Vec::new();
        for a in self.ring.nontrivial_idempotents() {
            for side in Side::BOTH {
                let ideal = self.ring.principal_ideal(&a, side)?;
                let code = RankMetricCode::from_matrices(ideal.elements)?;
                match verify_delta_equals_omega(&code) {
                    Some(rep) if rep.equal => checked += 1,
                    _ => bad.push(format!("{a} {side}")),
                }
            }
        }
        self.record(
            "delta = omega on idempotent ideals",
            bad.is_empty(),
            format!("{checked} ideals checked; failures: {bad:?}"),
        );
        Ok(())
    }

    fn delta_omega_random(&mut self) -> Result<()> {
        let mut checked = 0;
        let mut failures = 0;
        for _ in 0..self.cfg.random_subcodes {
            let code = random_linear_subcode(2, 2, self.ring.field(), &mut self.rng);
            match verify_delta_equals_omega(&code) {
                Some(rep) => {
                    checked += 1;
                    if !rep.equal {
                        failures += 1;
                    }
                }
                // only {0} has no δ
                None if code.len() == 1 => {}
                None => failures += 1,
            }
        }
        self.record(
            "delta = omega on random linear subcodes",
            failures == 0,
            format!("{checked} nonzero subcodes, {failures} failures"),
        );
        Ok(())
    }

    fn ideal_lifts(&mut self) -> Result<()> {
        let p = self.cfg.p as usize;
        let mut expected_m = p * p;
        if self.cfg.faulty(Fault::LiftParameters) {
            expected_m += 1;
        }
        let mut all_ok = true;
        let mut count = 0;
        let mut seen = None;
        for a in self.ring.nontrivial_idempotents() {
            for side in Side::BOTH {
                let rep = verify_idempotent_ideal_lift(&self.ring, &a, side)?;
                let m = rep.lift.lifted;
                let ok = rep.ok && m.m == expected_m && m.n == 4 && m.d == Some(2) && m.k == Some(2);
                all_ok &= ok;
                count += 1;
                seen.get_or_insert(m);
            }
        }
        let label = seen.map_or("-".to_string(), |m| m.to_string());
        self.record(
            "lifted ideal parameters",
            all_ok,
            format!(
                "{label} {} over {count} ideals",
                if all_ok { "OK" } else { "FAILED" }
            ),
        );
        Ok(())
    }

    fn distance_transport(&mut self) -> Result<()> {
        let factor = if self.cfg.faulty(Fault::LiftDistanceFactor) { 3 } else { 2 };
        let all = self.ring.elements();
        let mut pairs = 0u64;
        let mut bad = 0u64;
        let mut check = |a: &Matrix, b: &Matrix| -> Result<()> {
            pairs += 1;
            if lift_subspace(a).distance(&lift_subspace(b))? != factor * rank_distance(a, b)? {
                bad += 1;
            }
            Ok(())
        };
        let exhaustive = (all.len() as u64).pow(2) <= EXHAUSTIVE_PAIR_LIMIT;
        if exhaustive {
            for a in &all {
                for b in &all {
                    check(a, b)?;
                }
            }
        } else {
            for _ in 0..self.cfg.random_pairs {
                let a = &all[self.rng.gen_range(0..all.len())];
                let b = &all[self.rng.gen_range(0..all.len())];
                check(a, b)?;
            }
        }
        self.record(
            "lift doubles rank distance",
            bad == 0,
            format!(
                "{pairs} {} pairs, {bad} mismatches",
                if exhaustive { "exhaustive" } else { "random" }
            ),
        );
        Ok(())
    }

    fn averages(&mut self) -> Result<()> {
        let p = self.cfg.p;
        let w = WeightFunction::rank_weight(self.ring)?;
        let mut gamma1 = rank_weight_full_ring_average(p);
        if self.cfg.faulty(Fault::FullRingAverage) {
            gamma1 += Rational::new(1, (p * p * p * p) as i64);
        }
        let mut gamma2 = rank_weight_minimal_ideal_average(p);
        if self.cfg.faulty(Fault::IdealAverage) {
            gamma2 += Rational::new(1, (p * p) as i64);
        }
        let full = w.average_value(&self.ring.one(), Side::Left)?.gamma;
        let mut ideals_ok = true;
        for a in self.ring.nontrivial_idempotents() {
            for side in Side::BOTH {
                ideals_ok &= w.average_value(&a, side)?.gamma == gamma2;
            }
        }
        let e = w.egalitarian_check(Side::Left);
        let witnesses_ok = e
            .witnesses
            .as_ref()
            .is_some_and(|(a, b)| a.gamma != b.gamma);
        let passed = full == gamma1 && ideals_ok && gamma1 != gamma2 && !e.egalitarian && witnesses_ok;
        self.record(
            "rank weight averages",
            passed,
            format!(
                "gamma1 = {full} (closed form {gamma1}), gamma2 closed form {gamma2}, ideals match: {ideals_ok}, egalitarian: {}",
                e.egalitarian
            ),
        );
        Ok(())
    }

    fn homogeneity(&mut self) -> Result<()> {
        let w = WeightFunction::rank_weight(self.ring)?;
        let axioms = w.check_axioms();
        let mut details = vec![format!("weight axioms hold: {}", axioms.holds)];
        let mut passed = axioms.holds;
        for side in Side::BOTH {
            let h = w.homogeneous_check(side);
            passed &= !h.homogeneous;
            details.push(format!("{side}: E={} H={} homogeneous={}", h.e, h.h, h.homogeneous));
        }
        self.record("rank weight is not homogeneous", passed, details.join("; "));
        Ok(())
    }

    fn unit_invariance(&mut self) -> Result<()> {
        let rep = unit_invariance_check(&self.ring)?;
        self.record(
            "rank(UA) = rank(A)",
            rep.holds,
            format!("{} pairs checked", rep.pairs_checked),
        );
        Ok(())
    }

    fn gaussian(&mut self) -> Result<()> {
        let f = self.ring.field();
        let mut bad = Vec::new();
        let mut checked = 0;
        for n in 0..=4usize {
            for k in 0..=n {
                let mut formula = gaussian_coefficient(n as u32, k as u32, self.cfg.p)?;
                if self.cfg.faulty(Fault::GaussianCoefficient) && n == 4 && k == 2 {
                    formula += 1;
                }
                if formula > DEFAULT_ENUMERATION_BUDGET {
                    continue;
                }
                let counted = enumerate_grassmannian(n, k, f, DEFAULT_ENUMERATION_BUDGET)?.len() as u128;
                checked += 1;
                if counted != formula {
                    bad.push(format!("[{n} {k}]: counted {counted}, formula {formula}"));
                }
            }
        }
        self.record(
            "Gaussian coefficients",
            bad.is_empty(),
            format!("{checked} (n,k) pairs; mismatches: {bad:?}"),
        );
        Ok(())
    }

    fn subspace_weight(&mut self) -> Result<()> {
        let f = self.ring.field();
        let axioms = is_subspace_weight(3, f, DEFAULT_ENUMERATION_BUDGET)?;
        let g = enumerate_grassmannian(4, 2, f, DEFAULT_ENUMERATION_BUDGET)?;
        let eg = subspace_weight_egalitarian_check(&g)?;
        let spread = greedy_partial_spread(&g)?;
        let code = SubspaceCode::from_subspaces(spread)?;
        let pred = code.trivial_intersection_distance()?;
        let spread_ok = pred.as_ref().is_some_and(|t| t.holds && t.measured == 4);
        let passed = axioms.holds && eg.egalitarian && eg.gamma == Some(Rational::from_integer(2)) && spread_ok;
        self.record(
            "subspace weight",
            passed,
            format!(
                "axioms on P(3): {}; Grassmannian gamma: {}; partial spread of size {} has d = {}",
                axioms.holds,
                opt(eg.gamma),
                code.len(),
                opt(code.min_distance())
            ),
        );
        Ok(())
    }

    fn known_codes(&mut self) -> Result<()> {
        for known in catalog::all_ideal_lifts()? {
            if known.p != self.cfg.p {
                continue;
            }
            let ideal = self.ring.principal_ideal(&known.generator, known.side)?;
            let mut listed = known.ideal.clone();
            listed.sort();
            let code = RankMetricCode::from_matrices(ideal.elements.clone())?;
            let lifted = lift_code(&code)?;
            let mut expected = known.lifted.clone();
            expected.sort();
            let passed = ideal.elements == listed
                && lifted.codewords.codewords() == &expected[..]
                && code.rho() == Some(2)
                && code.delta() == Some(1);
            self.record(
                known.name,
                passed,
                format!("lift {} with listed codewords: {}", lifted.measured(), passed),
            );
        }
        let (a, b) = catalog::mixed_dimension_planes()?;
        let sum = a.sum(&b)?;
        let code = SubspaceCode::from_subspaces([a, b, sum.clone()])?;
        let passed = sum == Subspace::full(3, sum.field())
            && code.min_weight() == Some(2)
            && code.min_distance() == Some(1);
        self.record(
            "planes summing to F2^3",
            passed,
            format!("Delta = {}, d = {}", opt(code.min_weight()), opt(code.min_distance())),
        );
        Ok(())
    }
}

fn opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

/// Runs the whole suite for one prime.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let ring = MatrixRing::over_prime(cfg.p)?;
    if ring.order() > crate::weights::MAX_TABULATED_RING as u64 {
        return Err(Error::BudgetExceeded {
            what: format!("verification over M2(F{})", cfg.p),
            required: ring.order() as u128,
            budget: crate::weights::MAX_TABULATED_RING as u128,
        });
    }
    let mut suite = Suite {
        cfg,
        ring,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        checks: Vec::new(),
    };
    suite.known_codes()?;
    suite.rank_distribution()?;
    suite.delta_omega_ideals()?;
    suite.delta_omega_random()?;
    suite.ideal_lifts()?;
    suite.distance_transport()?;
    suite.averages()?;
    suite.homogeneity()?;
    suite.unit_invariance()?;
    suite.gaussian()?;
    suite.subspace_weight()?;
    Ok(VerifyReport {
        p: cfg.p,
        seed: cfg.seed,
        fault: cfg.fault.map(|f| f.to_string()),
        checks: suite.checks,
    })
}
