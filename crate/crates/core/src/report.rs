//! The scenario pipeline and the JSON reports printed by the CLI.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::classes::{ClassSpace, SubgroupSpec};
use crate::error::{Error, Result};
use crate::invariants::{is_one_defectless, kronecker_dimension, prop2_shadow_report, DefectlessReport, Prop2Shadow};
use crate::places::{FieldDescriptor, FunctionField, GlobalField, Rationals};
use crate::rigid::{
    check_hypothesis_a, check_hypothesis_b, classify_valuation, enumerate_h, global_counterexample_search,
    sample_elements, valuation_axiom_test, verify_conclusions, AxiomBudget, AxiomReport, Classification,
    ConclusionReport, HChoice, HypothesisOutcome, OracleSummary, SearchOutcome, Valuation, ValuationOracle,
};
use crate::scenario::{HSelection, Scenario, SCHEMA_VERSION};
use crate::symbols::{wedge_iso_check, LocalSymbol, WedgeReport};

/// Runs `$body` with `$f` bound to the concrete global field.
macro_rules! with_field {
    ($desc:expr, $f:ident => $body:expr) => {
        match $desc {
            FieldDescriptor::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldDescriptor::FunctionField { q } => {
                let $f = FunctionField::with_size(q)?;
                $body
            }
            d @ FieldDescriptor::FiniteField { .. } => Err(Error::InvalidField(format!("{d} is not a global field"))),
        }
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: ToolInfo = ToolInfo {
    name: env!("CARGO_PKG_NAME"),
    version: env!("CARGO_PKG_VERSION"),
};

/// Process exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Success = 0,
    Violation = 1,
    Usage = 2,
    Budget = 3,
}

impl ExitKind {
    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::BudgetExhausted(_) | Error::FactorBudget { .. } => ExitKind::Budget,
            _ => ExitKind::Usage,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub a: HypothesisOutcome,
    pub b: HypothesisOutcome,
    pub expected: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionStatus {
    /// Classified to a place with clean axioms and conclusions.
    Valuation,
    /// Classified, but an axiom or a conclusion failed.
    Violation,
    /// `O-minus` is empty within budget.
    Degenerate,
    /// Axiom violations found and no candidate matched.
    NotAValuationRing,
    /// Axioms clean but no unique candidate matched.
    Unclassified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub w_basis: Vec<Vec<u64>>,
    pub status: ConstructionStatus,
    pub oracle: OracleSummary,
    pub classification: Classification,
    pub axioms: Option<AxiomReport>,
    pub conclusions: Option<ConclusionReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub hypotheses_ms: u128,
    pub constructions_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub tool: ToolInfo,
    pub schema_version: u32,
    pub scenario: Scenario,
    pub class_dim: usize,
    pub codim_t: usize,
    pub hypotheses: HypothesisReport,
    pub wedge: WedgeReport,
    pub constructions: Vec<ConstructionReport>,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<Timing>,
}

impl RunReport {
    pub fn exit(&self) -> ExitKind {
        if self.violations.is_empty() {
            ExitKind::Success
        } else {
            ExitKind::Violation
        }
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let sc = &self.scenario;
        let _ = writeln!(s, "scenario {} over {} at {} with p = {}", sc.name, sc.field, sc.place, sc.p);
        let _ = writeln!(
            s,
            "class space dim {}, codim T {}; hypothesis a: {}, b: {}; wedge: {:?}",
            self.class_dim,
            self.codim_t,
            outcome_word(&self.hypotheses.a),
            outcome_word(&self.hypotheses.b),
            self.wedge.status
        );
        for c in &self.constructions {
            let target = match &c.classification {
                Classification::Matches { place, .. } => place.clone(),
                Classification::NoMatch { .. } => "no match".into(),
                Classification::Indistinguishable { places, .. } => format!("indistinguishable {places:?}"),
                Classification::Refused { .. } => "refused".into(),
            };
            let axioms = c.axioms.as_ref().map(|a| a.violations.to_string()).unwrap_or_else(|| "-".into());
            let concl = c
                .conclusions
                .as_ref()
                .map(|r| if r.all_hold { "hold" } else { "fail" })
                .unwrap_or("-");
            let _ = writeln!(
                s,
                "  W = {:?}: {:?}; classification {target}; axiom violations {axioms}; conclusions {concl}",
                c.w_basis, c.status
            );
        }
        if self.violations.is_empty() {
            let _ = writeln!(s, "no violations");
        } else {
            for v in &self.violations {
                let _ = writeln!(s, "violation: {v}");
            }
        }
        s
    }
}

fn outcome_word(o: &HypothesisOutcome) -> &'static str {
    match o {
        HypothesisOutcome::Holds => "holds",
        HypothesisOutcome::Counterexample { .. } => "counterexample",
        HypothesisOutcome::QuotientTooSmall => "quotient too small",
    }
}

fn build_spec<F: GlobalField>(field: F, scenario: &Scenario) -> Result<SubgroupSpec<F>> {
    let place = field.parse_place_label(&scenario.place)?;
    let space = ClassSpace::new(field, place, scenario.p)?;
    SubgroupSpec::new(Arc::new(space), &scenario.t_basis)
}

fn h_choices<F: GlobalField>(spec: &SubgroupSpec<F>, selection: &HSelection) -> Result<Vec<HChoice<F>>> {
    match selection {
        HSelection::All(_) => enumerate_h(spec),
        HSelection::Vectors(vs) => {
            if spec.tbar().is_full() {
                return Err(Error::NoProperH);
            }
            vs.iter().map(|v| HChoice::from_vector(spec.clone(), v)).collect()
        }
    }
}

fn candidates<F: GlobalField>(spec: &SubgroupSpec<F>, scenario: &Scenario) -> Result<Vec<F::Place>> {
    let field = spec.space().field();
    let mut out = vec![spec.space().place().clone()];
    if scenario.candidates.is_empty() {
        out.extend(field.first_places(6));
    }
    for c in &scenario.candidates {
        out.push(field.parse_place_label(c)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn construct<F: GlobalField>(
    spec: &SubgroupSpec<F>,
    h: HChoice<F>,
    scenario: &Scenario,
    places: &[F::Place],
    samples: &[F::Elem],
) -> Result<ConstructionReport> {
    let b = &scenario.budgets;
    let full = h.w().is_full();
    let oracle = ValuationOracle::build(h, b.witness_height, b.witness_count)?;
    let classified = classify_valuation(&oracle, places, samples)?;
    let summary = oracle.summary();
    let w_basis = summary.h_basis.clone();
    if oracle.is_degenerate() {
        // With H = E* the empty O-minus leaves O = E.
        let conclusions = if full {
            Some(verify_conclusions(spec, &Valuation::Trivial)?)
        } else {
            None
        };
        return Ok(ConstructionReport {
            w_basis,
            status: ConstructionStatus::Degenerate,
            oracle: summary,
            classification: classified.outcome,
            axioms: None,
            conclusions,
        });
    }
    let axioms = valuation_axiom_test(
        &oracle,
        AxiomBudget {
            unary_height: b.axiom_unary_height,
            pair_height: b.axiom_pair_height,
            random_pairs: b.axiom_random_pairs,
            random_height: b.axiom_random_height,
            seed: scenario.seed.wrapping_add(1),
        },
    )?;
    let conclusions = match &classified.matched {
        Some(place) => Some(verify_conclusions(spec, &Valuation::Place(place.clone()))?),
        None => None,
    };
    let status = match &conclusions {
        Some(c) if c.all_hold && axioms.clean() => ConstructionStatus::Valuation,
        Some(_) => ConstructionStatus::Violation,
        None if axioms.clean() => ConstructionStatus::Unclassified,
        None => ConstructionStatus::NotAValuationRing,
    };
    Ok(ConstructionReport {
        w_basis,
        status,
        oracle: summary,
        classification: classified.outcome,
        axioms: Some(axioms),
        conclusions,
    })
}

fn run_construct_in<F: GlobalField>(field: F, scenario: &Scenario, timing: bool) -> Result<RunReport> {
    let start = Instant::now();
    let spec = build_spec(field, scenario)?;
    let a = check_hypothesis_a(&spec)?;
    let b = check_hypothesis_b(&spec)?;
    let hypotheses = HypothesisReport {
        passed: a.holds() && b.holds(),
        a,
        b,
        expected: scenario.expect_hypotheses,
    };
    let wedge = wedge_iso_check(spec.space())?;
    let hypotheses_ms = start.elapsed().as_millis();

    let start = Instant::now();
    let hs = h_choices(&spec, &scenario.h)?;
    let places = candidates(&spec, scenario)?;
    let bud = &scenario.budgets;
    let samples = sample_elements(
        spec.space().field(),
        bud.classify_height,
        bud.classify_random,
        bud.classify_random_height,
        scenario.seed,
    );
    let constructions = hs
        .into_iter()
        .map(|h| construct(&spec, h, scenario, &places, &samples))
        .collect::<Result<Vec<_>>>()?;
    let constructions_ms = start.elapsed().as_millis();

    let mut violations = Vec::new();
    if hypotheses.expected && !hypotheses.passed {
        violations.push("hypotheses asserted to hold but failed".to_string());
    }
    for c in &constructions {
        if c.status == ConstructionStatus::Violation {
            violations.push(format!("construction with W = {:?} violates an axiom or a conclusion", c.w_basis));
        }
    }
    Ok(RunReport {
        tool: TOOL,
        schema_version: SCHEMA_VERSION,
        scenario: scenario.clone(),
        class_dim: spec.space().dim(),
        codim_t: spec.codim(),
        hypotheses,
        wedge,
        constructions,
        violations,
        timing_ms: timing.then_some(Timing {
            hypotheses_ms,
            constructions_ms,
        }),
    })
}

/// Hypotheses, then every selected `H`: oracle, classification, axioms,
/// conclusions.
pub fn run_construct(scenario: &Scenario, timing: bool) -> Result<RunReport> {
    with_field!(scenario.field, f => run_construct_in(f, scenario, timing))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub tool: ToolInfo,
    pub schema_version: u32,
    pub scenario: Scenario,
    pub outcome: SearchOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl SearchReport {
    pub fn exit(&self) -> ExitKind {
        match self.outcome {
            SearchOutcome::BudgetExhausted { .. } => ExitKind::Budget,
            _ => ExitKind::Success,
        }
    }

    pub fn summary(&self) -> String {
        match &self.outcome {
            SearchOutcome::NoneFound { height_bound, .. } => format!("none within bound {height_bound}\n"),
            SearchOutcome::Found {
                x,
                y,
                hypothesis,
                certificate,
                ..
            } => {
                let places = certificate.places();
                let at = if places.is_empty() {
                    "no place can detect it mod p".to_string()
                } else {
                    format!("symbol vanishes at {}", places.join(", "))
                };
                format!("pair ({x}, {y}) violates hypothesis {hypothesis:?}; {at}\n")
            }
            SearchOutcome::BudgetExhausted { pairs_checked, .. } => {
                format!("budget exhausted after {pairs_checked} pairs\n")
            }
        }
    }
}

pub fn run_search(scenario: &Scenario, timing: bool) -> Result<SearchReport> {
    let start = Instant::now();
    let outcome = with_field!(scenario.field, f => {
        let spec = build_spec(f, scenario)?;
        global_counterexample_search(&spec, scenario.budgets.search_height, scenario.budgets.search_max_pairs)
    })?;
    Ok(SearchReport {
        tool: TOOL,
        schema_version: SCHEMA_VERSION,
        scenario: scenario.clone(),
        outcome,
        elapsed_ms: timing.then(|| start.elapsed().as_millis()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolReport {
    pub field: FieldDescriptor,
    pub x: String,
    pub y: String,
    pub p: u64,
    pub symbol: LocalSymbol,
    pub nonzero: bool,
}

/// The local symbol of `{x, y}` at one place and its class mod `p`.
pub fn symbol_report(field: FieldDescriptor, place: &str, x: &str, y: &str, p: u64) -> Result<SymbolReport> {
    let symbol = with_field!(field, f => {
        let pl = f.parse_place_label(place)?;
        let xe = f.parse_elem(x)?;
        let ye = f.parse_elem(y)?;
        if f.is_zero(&xe) || f.is_zero(&ye) {
            return Err(Error::Domain("symbol of zero".into()));
        }
        f.local_symbol(&xe, &ye, &pl, p)
    })?;
    Ok(SymbolReport {
        field,
        x: x.to_string(),
        y: y.to_string(),
        p,
        nonzero: !symbol.vanishes(),
        symbol,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    pub field: FieldDescriptor,
    pub characteristic: u64,
    pub transcendence_degree: u32,
    pub kronecker_dimension: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defectless: Option<DefectlessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prop2: Option<Prop2Shadow>,
}

pub fn invariants_report(
    field: FieldDescriptor,
    place: Option<&str>,
    p: Option<u64>,
    n: Option<u32>,
) -> Result<InvariantsReport> {
    let mut report = InvariantsReport {
        field,
        characteristic: field.characteristic(),
        transcendence_degree: field.transcendence_degree(),
        kronecker_dimension: kronecker_dimension(&field),
        defectless: None,
        prop2: None,
    };
    let Some(place) = place else {
        if n.is_some() {
            return Err(Error::Domain("the shadow report needs --place".into()));
        }
        return Ok(report);
    };
    let (defectless, prop2) = with_field!(field, f => {
        let pl = f.parse_place_label(place)?;
        let d = is_one_defectless(&f, &Valuation::Place(pl.clone()))?;
        let shadow = match n {
            Some(n) => {
                let p = p.ok_or_else(|| Error::Domain("the shadow report needs -p".into()))?;
                Some(prop2_shadow_report(&ClassSpace::new(f, pl, p)?, n)?)
            }
            None => None,
        };
        Ok((d, shadow))
    })?;
    report.defectless = Some(defectless);
    report.prop2 = prop2;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfCheck {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub tool: ToolInfo,
    pub checks: Vec<SelfCheck>,
    pub passed: bool,
}

/// A fast battery of known values across every layer.
pub fn selftest() -> SelftestReport {
    fn check(name: &'static str, f: impl FnOnce() -> Result<bool>) -> SelfCheck {
        SelfCheck {
            name,
            passed: f().unwrap_or(false),
        }
    }
    let q = |s: &str| Rationals.parse_elem(s);
    let space = |l: u128, p: u64| ClassSpace::new(Rationals, crate::places::RationalPlace::Prime(l), p);
    let checks = vec![
        check("tame symbol {5,2} at 5 is 3", || {
            Ok(symbol_report(FieldDescriptor::Rationals, "5", "5", "2", 2)?.symbol.value == "3")
        }),
        check("real symbol {-1,-1} is -1", || {
            Ok(symbol_report(FieldDescriptor::Rationals, "inf", "-1", "-1", 2)?.symbol.value == "-1")
        }),
        check("{5,11} vanishes mod 2", || {
            Ok(crate::symbols::k2_vanishes_mod_p(&Rationals, &q("5")?, &q("11")?, 2)?.vanishes)
        }),
        check("Steinberg {3/7, 4/7} vanishes mod 3", || {
            Ok(crate::symbols::k2_vanishes_mod_p(&Rationals, &q("3/7")?, &q("4/7")?, 3)?.vanishes)
        }),
        check("Weil reciprocity for t, t+1 over F7", || {
            let f = FunctionField::with_size(7)?;
            crate::symbols::weil_reciprocity_check(&f, &f.parse_elem("t")?, &f.parse_elem("t+1")?)
        }),
        check("wedge isomorphism at Q:5, p = 2", || Ok(wedge_iso_check(&space(5, 2)?)?.holds())),
        check("hypotheses (a), (b) at Q:7, p = 3", || {
            let spec = SubgroupSpec::minimal(Arc::new(space(7, 3)?));
            Ok(check_hypothesis_a(&spec)?.holds() && check_hypothesis_b(&spec)?.holds())
        }),
        check("construction at Q:5 recovers the place", || {
            let spec = SubgroupSpec::minimal(Arc::new(space(5, 2)?));
            let h = HChoice::from_vector(spec, &[0, 1])?;
            let oracle = ValuationOracle::build(h, 100, 16)?;
            let places = Rationals.first_places(4);
            let c = classify_valuation(&oracle, &places, &Rationals.elements_up_to(40))?;
            Ok(c.matched == Some(crate::places::RationalPlace::Prime(5)))
        }),
        check("Kronecker dimensions of Q, F7, F7t", || {
            let d = |s: &str| -> Result<u32> { Ok(kronecker_dimension(&s.parse()?)) };
            Ok((d("Q")?, d("F7")?, d("F7t")?) == (1, 0, 1))
        }),
    ];
    SelftestReport {
        tool: TOOL,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
