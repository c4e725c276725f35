//! Test-side oracles and fixtures shared by the integration tests.
//!
//! Nothing here calls the engine; the evaluators enumerate bindings by brute
//! force straight from the declarative rule patterns.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use horst::model::{Dictionary, Term, TermId, Triple, TripleStore};
use horst::model::vocab;
use horst::rules::{PatternTerm, Rule, RuleId};
use rand::Rng;

pub const EX: &str = "http://example.org/";

/// `ex:a`, CURIEs for rdf/rdfs/owl, `"literal"` and `_:blank`.
pub fn term(token: &str) -> Term {
    if let Some(local) = token.strip_prefix("ex:") {
        Term::Iri(format!("{EX}{local}"))
    } else if let Some(label) = token.strip_prefix("_:") {
        Term::BlankNode(label.to_string())
    } else if token.starts_with('"') {
        Term::literal(token.trim_matches('"'))
    } else {
        Term::Iri(vocab::expand(token))
    }
}

pub fn parse_compact(line: &str) -> (Term, Term, Term) {
    let parts: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(parts.len(), 3, "bad fixture line {line:?}");
    (term(parts[0]), term(parts[1]), term(parts[2]))
}

pub fn store_of(lines: &[&str]) -> (Dictionary, TripleStore) {
    let mut dict = Dictionary::new();
    let mut store = TripleStore::new(&mut dict);
    for line in lines {
        let (s, p, o) = parse_compact(line);
        let t = Triple::new(dict.intern(s), dict.intern(p), dict.intern(o));
        store.insert_one(t);
    }
    (dict, store)
}

/// Encodes expected triples; every term must already be interned.
pub fn encode(dict: &Dictionary, lines: &[&str]) -> BTreeSet<Triple> {
    lines
        .iter()
        .map(|line| {
            let (s, p, o) = parse_compact(line);
            let id = |t: &Term| {
                dict.lookup(t)
                    .unwrap_or_else(|| panic!("term {t} of {line:?} is not interned"))
            };
            Triple::new(id(&s), id(&p), id(&o))
        })
        .collect()
}

pub fn render(dict: &Dictionary, set: &BTreeSet<Triple>) -> Vec<String> {
    set.iter()
        .map(|t| {
            let d = |id| dict.decode(id).map(|x| x.to_string()).unwrap_or_default();
            format!("{} {} {}", d(t.s), d(t.p), d(t.o))
        })
        .collect()
}

fn well_formed(dict: &Dictionary, t: &Triple) -> bool {
    use horst::model::TermKind::*;
    let kind = |id| dict.kind(id);
    matches!(kind(t.s), Some(Iri) | Some(BlankNode)) && kind(t.p) == Some(Iri)
}

type Bindings = BTreeMap<String, TermId>;

fn bind(pattern: &PatternTerm, value: TermId, dict: &Dictionary, b: &mut Bindings) -> bool {
    match pattern {
        PatternTerm::Const(c) => dict.lookup(c) == Some(value),
        PatternTerm::Var(v) => match b.get(v) {
            Some(&x) => x == value,
            None => {
                b.insert(v.clone(), value);
                true
            }
        },
    }
}

fn value(pattern: &PatternTerm, dict: &Dictionary, b: &Bindings) -> Option<TermId> {
    match pattern {
        PatternTerm::Const(c) => dict.lookup(c),
        PatternTerm::Var(v) => b.get(v).copied(),
    }
}

/// One application of `rule`: every assignment of stored triples to its
/// conditions is tried. For O10 the sameAs conditions also range over
/// `x owl:sameAs x` for every subject and object term.
pub fn brute_force_step(store: &TripleStore, dict: &Dictionary, rule: &Rule) -> BTreeSet<Triple> {
    let same_as = dict.lookup(&term("owl:sameAs"));
    let base: Vec<Triple> = store.triples().to_vec();
    let mut extended = base.clone();
    if rule.id == RuleId::O10 {
        if let Some(sa) = same_as {
            let terms: BTreeSet<TermId> = base.iter().flat_map(|t| [t.s, t.o]).collect();
            extended.extend(terms.into_iter().map(|x| Triple::new(x, sa, x)));
        }
    }
    let universes: Vec<&[Triple]> = rule
        .conditions
        .iter()
        .enumerate()
        .map(|(i, _)| {
            if rule.id == RuleId::O10 && i > 0 {
                &extended[..]
            } else {
                &base[..]
            }
        })
        .collect();

    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, Bindings)> = vec![(0, Bindings::new())];
    while let Some((depth, b)) = stack.pop() {
        if depth == rule.conditions.len() {
            if rule.distinct.iter().any(|(x, y)| b.get(x) == b.get(y)) {
                continue;
            }
            for c in &rule.consequences {
                let [s, p, o] = c.terms().map(|t| value(t, dict, &b));
                if let (Some(s), Some(p), Some(o)) = (s, p, o) {
                    out.insert(Triple::new(s, p, o));
                }
            }
            continue;
        }
        let cond = &rule.conditions[depth];
        let [ps, pp, po] = cond.terms();
        for t in universes[depth] {
            let mut next = b.clone();
            if bind(ps, t.s, dict, &mut next) && bind(pp, t.p, dict, &mut next) && bind(po, t.o, dict, &mut next) {
                stack.push((depth + 1, next));
            }
        }
    }
    out.into_iter()
        .filter(|t| !store.contains(t) && well_formed(dict, t))
        .collect()
}

/// Repeats `brute_force_step` for one rule until nothing new appears.
pub fn brute_force_rule_fixpoint(store: &TripleStore, dict: &Dictionary, rule: &Rule) -> BTreeSet<Triple> {
    let mut work = store.clone();
    let mut all = BTreeSet::new();
    loop {
        let step = brute_force_step(&work, dict, rule);
        if step.is_empty() {
            return all;
        }
        work.insert(step.iter().copied());
        all.extend(step);
    }
}

/// Closure of all given rules by repeated brute-force steps.
pub fn brute_force_closure(store: &TripleStore, dict: &Dictionary, rules: &[&Rule]) -> BTreeSet<Triple> {
    let mut work = store.clone();
    loop {
        let mut added = 0;
        for r in rules {
            let step = brute_force_step(&work, dict, r);
            added += work.insert(step);
        }
        if added == 0 {
            return work.triples().iter().copied().collect();
        }
    }
}

/// Floyd–Warshall reachability over node ids `0..n`.
#[allow(clippy::needless_range_loop)]
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for (i, row) in reach.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r {
                out.insert((i, j));
            }
        }
    }
    out
}

pub struct RandomOntology {
    pub lines: Vec<String>,
}

/// A small random ontology touching every rule family. With `same_as` off
/// it has no sameAs facts and no (inverse) functional properties.
pub fn random_ontology<R: Rng>(rng: &mut R, max_triples: usize, same_as: bool) -> RandomOntology {
    let classes = 5;
    let props = 5;
    let people = 8;
    let restrictions = 3;
    let c = |i: usize| format!("ex:C{i}");
    let p = |i: usize| format!("ex:p{i}");
    let a = |i: usize| format!("ex:a{i}");
    let r = |i: usize| format!("ex:r{i}");
    let mut lines = Vec::new();
    let target = rng.gen_range(max_triples.min(10)..=max_triples);
    let mut families: Vec<u32> = (0..20).collect();
    if !same_as {
        families.retain(|f| ![11, 12, 13].contains(f));
    }
    while lines.len() < target {
        let f = families[rng.gen_range(0..families.len())];
        let line = match f {
            0 => format!("{} rdfs:subClassOf {}", c(rng.gen_range(0..classes)), c(rng.gen_range(0..classes))),
            1 => format!("{} rdfs:subPropertyOf {}", p(rng.gen_range(0..props)), p(rng.gen_range(0..props))),
            2 => format!("{} rdfs:domain {}", p(rng.gen_range(0..props)), c(rng.gen_range(0..classes))),
            3 => format!("{} rdfs:range {}", p(rng.gen_range(0..props)), c(rng.gen_range(0..classes))),
            4 => format!("{} owl:equivalentClass {}", c(rng.gen_range(0..classes)), c(rng.gen_range(0..classes))),
            5 => format!("{} owl:equivalentProperty {}", p(rng.gen_range(0..props)), p(rng.gen_range(0..props))),
            6 => format!("{} owl:inverseOf {}", p(rng.gen_range(0..props)), p(rng.gen_range(0..props))),
            7 => format!("{} rdf:type owl:SymmetricProperty", p(rng.gen_range(0..props))),
            8 => format!("{} rdf:type owl:TransitiveProperty", p(rng.gen_range(0..props))),
            9 => {
                let v = r(rng.gen_range(0..restrictions));
                let kind = ["owl:hasValue", "owl:someValuesFrom", "owl:allValuesFrom"][rng.gen_range(0..3)];
                let filler = if kind == "owl:hasValue" {
                    a(rng.gen_range(0..people))
                } else {
                    c(rng.gen_range(0..classes))
                };
                lines.push(format!("{v} owl:onProperty {}", p(rng.gen_range(0..props))));
                format!("{v} {kind} {filler}")
            }
            10 => format!("{} rdf:type {}", a(rng.gen_range(0..people)), r(rng.gen_range(0..restrictions))),
            11 => format!("{} owl:sameAs {}", a(rng.gen_range(0..people)), a(rng.gen_range(0..people))),
            12 => format!("{} rdf:type owl:FunctionalProperty", p(rng.gen_range(0..props))),
            13 => format!("{} rdf:type owl:InverseFunctionalProperty", p(rng.gen_range(0..props))),
            14 | 15 => format!("{} rdf:type {}", a(rng.gen_range(0..people)), c(rng.gen_range(0..classes))),
            18 => format!("{} {} \"v{}\"", a(rng.gen_range(0..people)), p(rng.gen_range(0..props)), rng.gen_range(0..3)),
            _ => format!(
                "{} {} {}",
                a(rng.gen_range(0..people)),
                p(rng.gen_range(0..props)),
                a(rng.gen_range(0..people))
            ),
        };
        lines.push(line);
    }
    lines.truncate(max_triples);
    RandomOntology { lines }
}

impl RandomOntology {
    pub fn store(&self) -> (Dictionary, TripleStore) {
        let refs: Vec<&str> = self.lines.iter().map(String::as_str).collect();
        store_of(&refs)
    }
}

/// Hand-built per-rule fixture with its expected fresh derivations.
pub struct Fixture {
    pub rule: RuleId,
    pub input: &'static [&'static str],
    pub expected: &'static [&'static str],
}

pub fn fixtures() -> Vec<Fixture> {
    use RuleId::*;
    vec![
        Fixture {
            rule: R1,
            input: &[
                "ex:A rdfs:subClassOf ex:B",
                "ex:B rdfs:subClassOf ex:C",
                "ex:C rdfs:subClassOf ex:D",
                "ex:X rdfs:subClassOf ex:Y",
                "ex:a rdf:type ex:A",
            ],
            expected: &[
                "ex:A rdfs:subClassOf ex:C",
                "ex:B rdfs:subClassOf ex:D",
                "ex:A rdfs:subClassOf ex:D",
            ],
        },
        Fixture {
            rule: R2,
            input: &[
                "ex:p rdfs:subPropertyOf ex:q",
                "ex:q rdfs:subPropertyOf ex:r",
                "ex:s rdfs:subPropertyOf ex:p",
                "ex:a ex:p ex:b",
            ],
            expected: &[
                "ex:p rdfs:subPropertyOf ex:r",
                "ex:s rdfs:subPropertyOf ex:q",
                "ex:s rdfs:subPropertyOf ex:r",
            ],
        },
        Fixture {
            rule: R3,
            input: &[
                "ex:a ex:p ex:b",
                "ex:a ex:p \"lit\"",
                "ex:c ex:q ex:d",
                "ex:p rdfs:subPropertyOf ex:q",
                "ex:q rdfs:subPropertyOf ex:r",
            ],
            expected: &["ex:a ex:q ex:b", "ex:a ex:q \"lit\"", "ex:c ex:r ex:d"],
        },
        Fixture {
            rule: R4,
            input: &[
                "ex:p rdfs:domain ex:C",
                "ex:a ex:p ex:b",
                "ex:c ex:p \"x\"",
                "ex:d ex:q ex:e",
            ],
            expected: &["ex:a rdf:type ex:C", "ex:c rdf:type ex:C"],
        },
        Fixture {
            rule: R5,
            input: &[
                "ex:p rdfs:range ex:C",
                "ex:a ex:p ex:b",
                "ex:a ex:p \"lit\"",
                "ex:d ex:q ex:e",
            ],
            expected: &["ex:b rdf:type ex:C"],
        },
        Fixture {
            rule: R6,
            input: &[
                "ex:A rdfs:subClassOf ex:B",
                "ex:B rdfs:subClassOf ex:C",
                "ex:x rdf:type ex:A",
                "ex:y rdf:type ex:B",
                "ex:z ex:p ex:A",
            ],
            expected: &["ex:x rdf:type ex:B", "ex:y rdf:type ex:C"],
        },
        Fixture {
            rule: O1,
            input: &[
                "ex:p rdf:type owl:FunctionalProperty",
                "ex:u ex:p ex:v",
                "ex:u ex:p ex:w",
                "ex:u2 ex:p ex:v2",
                "ex:u ex:q ex:a",
                "ex:u ex:q ex:b",
            ],
            expected: &["ex:v owl:sameAs ex:w", "ex:w owl:sameAs ex:v"],
        },
        Fixture {
            rule: O2,
            input: &[
                "ex:p rdf:type owl:InverseFunctionalProperty",
                "ex:v ex:p ex:u",
                "ex:w ex:p ex:u",
                "ex:z ex:p ex:y",
                "ex:m ex:q ex:n",
                "ex:o ex:q ex:n",
            ],
            expected: &["ex:v owl:sameAs ex:w", "ex:w owl:sameAs ex:v"],
        },
        Fixture {
            rule: O3,
            input: &[
                "ex:p rdf:type owl:SymmetricProperty",
                "ex:a ex:p ex:b",
                "ex:c ex:p ex:d",
                "ex:d ex:p ex:c",
                "ex:e ex:q ex:f",
            ],
            expected: &["ex:b ex:p ex:a"],
        },
        Fixture {
            rule: O4,
            input: &[
                "ex:p rdf:type owl:TransitiveProperty",
                "ex:a ex:p ex:b",
                "ex:b ex:p ex:c",
                "ex:c ex:p ex:d",
                "ex:x ex:q ex:y",
                "ex:y ex:q ex:z",
            ],
            expected: &["ex:a ex:p ex:c", "ex:b ex:p ex:d", "ex:a ex:p ex:d"],
        },
        Fixture {
            rule: O5,
            input: &[
                "ex:a owl:sameAs ex:b",
                "ex:c owl:sameAs ex:d",
                "ex:d owl:sameAs ex:c",
                "ex:e ex:p ex:f",
            ],
            expected: &["ex:b owl:sameAs ex:a"],
        },
        Fixture {
            rule: O6,
            input: &[
                "ex:a owl:sameAs ex:b",
                "ex:b owl:sameAs ex:c",
                "ex:c owl:sameAs ex:d",
                "ex:e ex:p ex:f",
                "ex:f ex:p ex:g",
            ],
            expected: &[
                "ex:a owl:sameAs ex:c",
                "ex:b owl:sameAs ex:d",
                "ex:a owl:sameAs ex:d",
            ],
        },
        Fixture {
            rule: O7a,
            input: &[
                "ex:p owl:inverseOf ex:q",
                "ex:a ex:p ex:b",
                "ex:c ex:q ex:d",
                "ex:e ex:r ex:f",
            ],
            expected: &["ex:b ex:q ex:a"],
        },
        Fixture {
            rule: O7b,
            input: &[
                "ex:p owl:inverseOf ex:q",
                "ex:a ex:p ex:b",
                "ex:c ex:q ex:d",
                "ex:e ex:r ex:f",
            ],
            expected: &["ex:d ex:p ex:c"],
        },
        Fixture {
            rule: O8,
            input: &[
                "ex:C rdf:type owl:Class",
                "ex:C owl:sameAs ex:D",
                "ex:x owl:sameAs ex:y",
                "ex:E rdf:type owl:Class",
            ],
            expected: &["ex:C rdfs:subClassOf ex:D"],
        },
        Fixture {
            rule: O9,
            input: &[
                "ex:p rdf:type owl:Property",
                "ex:p owl:sameAs ex:q",
                "ex:x owl:sameAs ex:y",
                "ex:r rdf:type owl:Property",
            ],
            expected: &["ex:p rdfs:subPropertyOf ex:q"],
        },
        Fixture {
            rule: O10,
            input: &[
                "ex:u ex:p ex:v",
                "ex:u owl:sameAs ex:x",
                "ex:v owl:sameAs ex:y",
                "ex:w ex:q ex:u",
                "ex:m ex:q ex:n",
            ],
            expected: &[
                "ex:x ex:p ex:v",
                "ex:u ex:p ex:y",
                "ex:x ex:p ex:y",
                "ex:w ex:q ex:x",
                "ex:x owl:sameAs ex:x",
                "ex:y owl:sameAs ex:y",
            ],
        },
        Fixture {
            rule: O11a,
            input: &[
                "ex:v owl:equivalentClass ex:w",
                "ex:a owl:equivalentClass ex:b",
                "ex:c rdfs:subClassOf ex:d",
            ],
            expected: &["ex:v rdfs:subClassOf ex:w", "ex:a rdfs:subClassOf ex:b"],
        },
        Fixture {
            rule: O11b,
            input: &[
                "ex:v owl:equivalentClass ex:w",
                "ex:a owl:equivalentClass ex:b",
                "ex:c rdfs:subClassOf ex:d",
            ],
            expected: &["ex:w rdfs:subClassOf ex:v", "ex:b rdfs:subClassOf ex:a"],
        },
        Fixture {
            rule: O11c,
            input: &[
                "ex:A rdfs:subClassOf ex:B",
                "ex:B rdfs:subClassOf ex:A",
                "ex:C rdfs:subClassOf ex:D",
                "ex:D rdfs:subPropertyOf ex:C",
            ],
            expected: &["ex:A owl:equivalentClass ex:B", "ex:B owl:equivalentClass ex:A"],
        },
        Fixture {
            rule: O12a,
            input: &[
                "ex:v owl:equivalentProperty ex:w",
                "ex:a owl:equivalentProperty ex:b",
                "ex:c rdfs:subPropertyOf ex:d",
            ],
            expected: &["ex:v rdfs:subPropertyOf ex:w", "ex:a rdfs:subPropertyOf ex:b"],
        },
        Fixture {
            rule: O12b,
            input: &[
                "ex:v owl:equivalentProperty ex:w",
                "ex:a owl:equivalentProperty ex:b",
                "ex:c rdfs:subPropertyOf ex:d",
            ],
            expected: &["ex:w rdfs:subPropertyOf ex:v", "ex:b rdfs:subPropertyOf ex:a"],
        },
        Fixture {
            rule: O12c,
            input: &[
                "ex:p rdfs:subPropertyOf ex:q",
                "ex:q rdfs:subPropertyOf ex:p",
                "ex:r rdfs:subPropertyOf ex:s",
                "ex:s rdfs:subClassOf ex:r",
            ],
            expected: &[
                "ex:p owl:equivalentProperty ex:q",
                "ex:q owl:equivalentProperty ex:p",
            ],
        },
        Fixture {
            rule: O13,
            input: &[
                "ex:r owl:hasValue ex:w",
                "ex:r owl:onProperty ex:p",
                "ex:a ex:p ex:w",
                "ex:b ex:p ex:z",
                "ex:c ex:q ex:w",
            ],
            expected: &["ex:a rdf:type ex:r"],
        },
        Fixture {
            rule: O14,
            input: &[
                "ex:r owl:hasValue ex:w",
                "ex:r owl:onProperty ex:p",
                "ex:a rdf:type ex:r",
                "ex:b rdf:type ex:s",
                "ex:c ex:p ex:w",
            ],
            expected: &["ex:a ex:p ex:w"],
        },
        Fixture {
            rule: O15,
            input: &[
                "ex:r owl:someValuesFrom ex:C",
                "ex:r owl:onProperty ex:p",
                "ex:a ex:p ex:x",
                "ex:x rdf:type ex:C",
                "ex:b ex:p ex:y",
                "ex:y rdf:type ex:D",
                "ex:c ex:q ex:x",
            ],
            expected: &["ex:a rdf:type ex:r"],
        },
        Fixture {
            rule: O16,
            input: &[
                "ex:r owl:allValuesFrom ex:C",
                "ex:r owl:onProperty ex:p",
                "ex:a rdf:type ex:r",
                "ex:a ex:p ex:x",
                "ex:a ex:p \"lit\"",
                "ex:b ex:p ex:y",
                "ex:a ex:q ex:z",
            ],
            expected: &["ex:x rdf:type ex:C"],
        },
    ]
}
