//! Materialization driver: runs the per-class orders in the reasoning
//! pipeline, a complete fixpoint variant of it, and a round-robin oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::engine::{apply_generic, apply_rule, is_closure_backed, EvalContext};
use crate::error::ExecError;
use crate::model::{Dictionary, Triple, TripleStore};
use crate::planner::optimal_order;
use crate::rules::{catalog_variant, CatalogVariant, PatternTerm, Rule, RuleClass, RuleId, TriplePattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum ExecutionMode {
    /// Schema once, SPO/type loop, sameAs once.
    #[default]
    #[serde(rename = "paper")]
    PaperStrategy,
    /// The pipeline repeated until nothing can fire any more.
    #[serde(rename = "fixpoint")]
    GlobalFixpoint,
    /// Semi-naive round-robin over all enabled rules.
    #[serde(rename = "oracle")]
    NaiveOracle,
}

impl ExecutionMode {
    pub const ALL: [ExecutionMode; 3] = [
        ExecutionMode::PaperStrategy,
        ExecutionMode::GlobalFixpoint,
        ExecutionMode::NaiveOracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExecutionMode::PaperStrategy => "paper",
            ExecutionMode::GlobalFixpoint => "fixpoint",
            ExecutionMode::NaiveOracle => "oracle",
        }
    }

    /// Modes whose result is the full closure.
    pub fn is_complete(self) -> bool {
        self != ExecutionMode::PaperStrategy
    }
}

impl fmt::Display for ExecutionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExecutionMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper" => Ok(ExecutionMode::PaperStrategy),
            "fixpoint" => Ok(ExecutionMode::GlobalFixpoint),
            "oracle" => Ok(ExecutionMode::NaiveOracle),
            other => Err(format!("unknown mode {other:?} (expected paper, fixpoint or oracle)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExecConfig {
    pub mode: ExecutionMode,
    pub workers: usize,
    /// Upper bound on loop iterations, pipeline passes and oracle passes.
    pub max_iterations: usize,
    pub variant: CatalogVariant,
    /// Per-class order overrides; missing classes use [`optimal_order`].
    pub orders: BTreeMap<RuleClass, Vec<RuleId>>,
}

impl Default for ExecConfig {
    fn default() -> Self {
        ExecConfig {
            mode: ExecutionMode::PaperStrategy,
            workers: 1,
            max_iterations: 10_000,
            variant: CatalogVariant::Standard,
            orders: BTreeMap::new(),
        }
    }
}

impl ExecConfig {
    pub fn new(mode: ExecutionMode) -> Self {
        ExecConfig {
            mode,
            ..Default::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_variant(mut self, variant: CatalogVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_max_iterations(mut self, n: usize) -> Self {
        self.max_iterations = n;
        self
    }

    pub fn with_order(mut self, class: RuleClass, order: Vec<RuleId>) -> Self {
        self.orders.insert(class, order);
        self
    }

    pub fn with_orders(mut self, orders: BTreeMap<RuleClass, Vec<RuleId>>) -> Self {
        self.orders.extend(orders);
        self
    }

    pub fn order(&self, class: RuleClass) -> Vec<RuleId> {
        self.orders
            .get(&class)
            .cloned()
            .unwrap_or_else(|| optimal_order(class).order)
    }
}

/// The canonical orders with every class reversed.
pub fn reversed_orders() -> BTreeMap<RuleClass, Vec<RuleId>> {
    RuleClass::ALL
        .iter()
        .map(|&c| {
            let mut order = optimal_order(c).order;
            order.reverse();
            (c, order)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseEntry {
    pub phase: RuleClass,
    pub rule: RuleId,
    pub fresh: usize,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseOrder {
    /// Class name, or `round-robin` for the oracle.
    pub phase: String,
    pub rules: Vec<RuleId>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureReport {
    pub mode: ExecutionMode,
    pub input_count: usize,
    pub output_count: usize,
    pub derived_count: usize,
    /// SPO/type loop iterations, or round-robin passes for the oracle.
    pub outer_iterations: usize,
    /// Pipeline passes; always 1 outside fixpoint mode.
    pub pipeline_passes: usize,
    /// Includes `fixpoint_checks`.
    pub rule_applications: usize,
    /// Rule evaluations made only to confirm the fixpoint.
    pub fixpoint_checks: usize,
    pub strategy: Vec<PhaseOrder>,
    pub per_phase: Vec<PhaseEntry>,
    pub wall_ms: f64,
}

impl ClosureReport {
    fn new(mode: ExecutionMode, input_count: usize) -> Self {
        ClosureReport {
            mode,
            input_count,
            output_count: input_count,
            derived_count: 0,
            outer_iterations: 0,
            pipeline_passes: 0,
            rule_applications: 0,
            fixpoint_checks: 0,
            strategy: Vec::new(),
            per_phase: Vec::new(),
            wall_ms: 0.0,
        }
    }

    /// Fresh derivations summed per rule.
    pub fn fresh_by_rule(&self) -> BTreeMap<RuleId, usize> {
        let mut out = BTreeMap::new();
        for e in &self.per_phase {
            *out.entry(e.rule).or_insert(0) += e.fresh;
        }
        out
    }
}

/// Result of one phase run.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOutcome {
    pub fresh: BTreeSet<Triple>,
    pub entries: Vec<PhaseEntry>,
}

/// Checks that `order` lists each enabled rule of `class` exactly once.
pub fn validate_order(class: RuleClass, order: &[RuleId], variant: CatalogVariant) -> Result<(), ExecError> {
    let rules = catalog_variant(variant);
    let mut seen = BTreeSet::new();
    for &id in order {
        let r = &rules[id as usize];
        if r.class != class {
            return Err(ExecError::ForeignRule { rule: id, class });
        }
        if !r.enabled {
            return Err(ExecError::IncompleteOrder {
                class,
                detail: format!("{id} is disabled"),
            });
        }
        if !seen.insert(id) {
            return Err(ExecError::IncompleteOrder {
                class,
                detail: format!("{id} appears twice"),
            });
        }
    }
    let missing: Vec<String> = rules
        .iter()
        .filter(|r| r.enabled && r.class == class && !seen.contains(&r.id))
        .map(|r| r.id.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(ExecError::IncompleteOrder {
            class,
            detail: format!("missing {}", missing.join(", ")),
        });
    }
    Ok(())
}

struct Runner<'a> {
    store: TripleStore,
    dict: &'a Dictionary,
    cfg: &'a ExecConfig,
    rules: &'static [Rule],
    report: ClosureReport,
    /// Store length at each rule's most recent application.
    last_seen: BTreeMap<RuleId, usize>,
}

impl<'a> Runner<'a> {
    fn new(store: TripleStore, dict: &'a Dictionary, cfg: &'a ExecConfig) -> Self {
        let report = ClosureReport::new(cfg.mode, store.len());
        Runner {
            store,
            dict,
            cfg,
            rules: catalog_variant(cfg.variant),
            report,
            last_seen: BTreeMap::new(),
        }
    }

    fn ctx(&self) -> EvalContext<'_> {
        EvalContext::new(&self.store, self.dict)
            .with_workers(self.cfg.workers)
            .with_variant(self.cfg.variant)
    }

    fn record(&mut self, phase: RuleClass, rule: RuleId, fresh: BTreeSet<Triple>, started: Instant) -> usize {
        let mark = self.store.len();
        let added = self.store.insert(fresh);
        // a closure kernel has already consumed its own output
        let seen = if is_closure_backed(&self.rules[rule as usize]) {
            self.store.len()
        } else {
            mark
        };
        self.last_seen.insert(rule, seen);
        self.report.rule_applications += 1;
        self.report.per_phase.push(PhaseEntry {
            phase,
            rule,
            fresh: added,
            wall_ms: started.elapsed().as_secs_f64() * 1e3,
        });
        added
    }

    fn apply(&mut self, phase: RuleClass, id: RuleId) -> usize {
        let started = Instant::now();
        let rule = &self.rules[id as usize];
        let fresh = apply_rule(&self.ctx(), rule, None);
        self.record(phase, id, fresh, started)
    }

    fn phase(&mut self, class: RuleClass, order: &[RuleId]) -> usize {
        order.iter().map(|&id| self.apply(class, id)).sum()
    }

    fn tick(&self, count: usize) -> Result<(), ExecError> {
        if count > self.cfg.max_iterations {
            Err(ExecError::IterationLimit(self.cfg.max_iterations))
        } else {
            Ok(())
        }
    }

    fn pipeline(&mut self, orders: &BTreeMap<RuleClass, Vec<RuleId>>) -> Result<(), ExecError> {
        self.report.pipeline_passes += 1;
        self.phase(RuleClass::Schema, &orders[&RuleClass::Schema]);
        let mut iterations = 0;
        loop {
            iterations += 1;
            self.report.outer_iterations += 1;
            self.tick(iterations)?;
            let spo = self.phase(RuleClass::Spo, &orders[&RuleClass::Spo]);
            let ty = self.phase(RuleClass::Type, &orders[&RuleClass::Type]);
            if spo == 0 && ty == 0 {
                break;
            }
        }
        self.phase(RuleClass::SameAs, &orders[&RuleClass::SameAs]);
        Ok(())
    }

    /// Enabled rules that have not seen some stored triple fitting one of
    /// their condition patterns.
    fn stale_rules(&self) -> Vec<RuleId> {
        self.rules
            .iter()
            .filter(|r| r.enabled)
            .filter(|r| {
                let mark = self.last_seen.get(&r.id).copied().unwrap_or(0);
                self.store
                    .since(mark)
                    .iter()
                    .any(|t| r.conditions.iter().any(|c| fits(t, c, self.dict)))
            })
            .map(|r| r.id)
            .collect()
    }

    /// Whether another pipeline pass would derive anything. Only stale rules
    /// can; each is evaluated once and the result discarded.
    fn needs_another_pass(&mut self) -> bool {
        for id in self.stale_rules() {
            self.report.fixpoint_checks += 1;
            self.report.rule_applications += 1;
            if !apply_rule(&self.ctx(), &self.rules[id as usize], None).is_empty() {
                return true;
            }
            self.last_seen.insert(id, self.store.len());
        }
        false
    }

    fn oracle(&mut self) -> Result<(), ExecError> {
        self.report.pipeline_passes = 1;
        let rules: Vec<&'static Rule> = self.rules.iter().filter(|r| r.enabled).collect();
        let mut marks = vec![0usize; rules.len()];
        loop {
            self.report.outer_iterations += 1;
            self.tick(self.report.outer_iterations)?;
            let mut derived = 0;
            for (i, rule) in rules.iter().enumerate() {
                let started = Instant::now();
                let delta = self.store.since(marks[i]).to_vec();
                marks[i] = self.store.len();
                let fresh = apply_generic(&self.ctx(), rule, Some(&delta));
                derived += self.record(rule.class, rule.id, fresh, started);
            }
            if derived == 0 {
                return Ok(());
            }
        }
    }
}

/// Whether `t` agrees with every constant of `pattern`.
fn fits(t: &Triple, pattern: &TriplePattern, dict: &Dictionary) -> bool {
    [t.s, t.p, t.o]
        .iter()
        .zip(pattern.terms())
        .all(|(&id, term)| match term {
            PatternTerm::Var(_) => true,
            PatternTerm::Const(c) => dict.lookup(c) == Some(id),
        })
}

/// Computes the closure of `store` under the configured mode.
pub fn materialize(
    store: TripleStore,
    dict: &Dictionary,
    cfg: &ExecConfig,
) -> Result<(TripleStore, ClosureReport), ExecError> {
    let started = Instant::now();
    let mut runner = Runner::new(store, dict, cfg);
    match cfg.mode {
        ExecutionMode::NaiveOracle => {
            let order: Vec<RuleId> = runner.rules.iter().filter(|r| r.enabled).map(|r| r.id).collect();
            runner.report.strategy = vec![PhaseOrder {
                phase: "round-robin".to_string(),
                rules: order,
            }];
            runner.oracle()?;
        }
        mode => {
            let mut orders = BTreeMap::new();
            for class in RuleClass::ALL {
                let order = cfg.order(class);
                validate_order(class, &order, cfg.variant)?;
                runner.report.strategy.push(PhaseOrder {
                    phase: class.to_string(),
                    rules: order.clone(),
                });
                orders.insert(class, order);
            }
            runner.pipeline(&orders)?;
            if mode == ExecutionMode::GlobalFixpoint {
                while runner.needs_another_pass() {
                    runner.tick(runner.report.pipeline_passes + 1)?;
                    runner.pipeline(&orders)?;
                }
            }
        }
    }
    let mut report = runner.report;
    report.output_count = runner.store.len();
    report.derived_count = report.output_count - report.input_count;
    report.wall_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok((runner.store, report))
}

/// Runs one class in `order`, each rule seeing its predecessors' output.
pub fn run_phase(
    store: &mut TripleStore,
    dict: &Dictionary,
    class: RuleClass,
    order: &[RuleId],
    cfg: &ExecConfig,
) -> Result<PhaseOutcome, ExecError> {
    validate_order(class, order, cfg.variant)?;
    let mark = store.len();
    let taken = std::mem::replace(store, TripleStore::with_vocab(store.vocab().clone()));
    let mut runner = Runner::new(taken, dict, cfg);
    runner.phase(class, order);
    *store = runner.store;
    Ok(PhaseOutcome {
        fresh: store.since(mark).iter().copied().collect(),
        entries: runner.report.per_phase,
    })
}

/// A named execution setup for [`compare_strategies`].
#[derive(Debug, Clone)]
pub struct StrategySpec {
    pub name: String,
    pub mode: ExecutionMode,
    pub orders: BTreeMap<RuleClass, Vec<RuleId>>,
}

impl StrategySpec {
    pub fn new(name: impl Into<String>, mode: ExecutionMode) -> Self {
        StrategySpec {
            name: name.into(),
            mode,
            orders: BTreeMap::new(),
        }
    }

    pub fn with_orders(mut self, orders: BTreeMap<RuleClass, Vec<RuleId>>) -> Self {
        self.orders = orders;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub name: String,
    pub mode: ExecutionMode,
    pub outer_iterations: usize,
    pub rule_applications: usize,
    pub derived_count: usize,
    pub wall_ms: f64,
}

/// Runs every strategy on its own copy of `store`. The closures of all
/// complete-mode strategies must agree.
pub fn compare_strategies(
    store: &TripleStore,
    dict: &Dictionary,
    specs: &[StrategySpec],
    base: &ExecConfig,
) -> Result<Vec<ComparisonRow>, ExecError> {
    if specs.is_empty() {
        return Err(ExecError::TooFewStrategies(1));
    }
    let mut rows = Vec::new();
    let mut reference: Option<(String, BTreeSet<Triple>)> = None;
    for spec in specs {
        let mut cfg = base.clone();
        cfg.mode = spec.mode;
        cfg.orders = spec.orders.clone();
        let (out, report) = materialize(store.clone(), dict, &cfg)?;
        if spec.mode.is_complete() {
            let closure: BTreeSet<Triple> = out.triples().iter().copied().collect();
            match &reference {
                Some((name, expected)) if *expected != closure => {
                    return Err(ExecError::ClosureMismatch {
                        left: name.clone(),
                        right: spec.name.clone(),
                    })
                }
                Some(_) => {}
                None => reference = Some((spec.name.clone(), closure)),
            }
        }
        rows.push(ComparisonRow {
            name: spec.name.clone(),
            mode: spec.mode,
            outer_iterations: report.outer_iterations,
            rule_applications: report.rule_applications,
            derived_count: report.derived_count,
            wall_ms: report.wall_ms,
        });
    }
    Ok(rows)
}
