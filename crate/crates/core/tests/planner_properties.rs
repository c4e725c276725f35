use std::collections::{BTreeMap, BTreeSet};

use horst::model::Term;
use horst::planner::{
    build_graph, class_graph, depends_on, display_groups, enumerate_strategies, export_dot,
    global_graph, DependencyGraph, Exclusions,
};
use horst::rules::{catalog, PatternTerm, Rule, RuleClass, TriplePattern};
use proptest::prelude::*;

/// Every ordering of every node subset that is a simple path which cannot
/// be extended at either end.
fn brute_force_paths(g: &DependencyGraph) -> BTreeSet<Vec<String>> {
    let labels: Vec<String> = g.nodes().iter().map(|n| n.label.clone()).collect();
    let edge = |a: &str, b: &str| g.has_edge(a, b);
    let mut out = BTreeSet::new();
    let n = labels.len();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        let first = path[0];
        let outside = |i: &usize| !path.contains(i);
        let extend_end = (0..n).filter(outside).any(|j| edge(&labels[last], &labels[j]));
        let extend_start = (0..n).filter(outside).any(|j| edge(&labels[j], &labels[first]));
        if !extend_end && !extend_start {
            out.insert(path.iter().map(|&i| labels[i].clone()).collect());
        }
        for j in (0..n).filter(outside) {
            if edge(&labels[last], &labels[j]) {
                let mut next = path.clone();
                next.push(j);
                stack.push(next);
            }
        }
    }
    out
}

fn enumerated(g: &DependencyGraph) -> BTreeSet<Vec<String>> {
    let e = enumerate_strategies(g, None);
    assert!(!e.truncated);
    let set: BTreeSet<Vec<String>> = e.strategies.iter().map(|s| s.labels.clone()).collect();
    assert_eq!(set.len(), e.strategies.len(), "duplicate strategies");
    set
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn enumeration_matches_brute_force(
        picks in prop::collection::btree_set(0usize..27, 1..=6),
        exclusion_picks in prop::collection::vec((0usize..27, 0usize..27), 0..4),
    ) {
        let all = catalog();
        let rules: Vec<&Rule> = picks.iter().map(|&i| &all[i]).collect();
        let excl = Exclusions::new(exclusion_picks.iter().map(|&(a, b)| (all[a].id, all[b].id)));
        let g = build_graph(&rules, &excl);
        prop_assert_eq!(enumerated(&g), brute_force_paths(&g));
    }
}

#[test]
fn grouped_class_graphs_match_brute_force() {
    for class in RuleClass::ALL {
        let g = class_graph(class, &Exclusions::default()).merged(&display_groups(class));
        assert_eq!(enumerated(&g), brute_force_paths(&g), "{class}");
    }
}

#[test]
fn enumeration_is_sorted_longest_first_and_deterministic() {
    let g = class_graph(RuleClass::Type, &Exclusions::default());
    let a = enumerate_strategies(&g, Some(500));
    let b = enumerate_strategies(&g, Some(500));
    assert_eq!(a, b);
    assert!(a.strategies.windows(2).all(|w| w[0].len() >= w[1].len()));
    assert!(a.strategies.len() <= 500);
}

/// Proper unification with a substitution, variables of the two patterns
/// kept apart. Succeeds when some ground triple instantiates both.
fn unifiable(a: &TriplePattern, b: &TriplePattern) -> bool {
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
    enum Key {
        L(String),
        R(String),
    }
    let mut classes: BTreeMap<Key, Key> = BTreeMap::new();
    let mut bound: BTreeMap<Key, Term> = BTreeMap::new();
    fn find(classes: &BTreeMap<Key, Key>, k: &Key) -> Key {
        let mut k = k.clone();
        while let Some(p) = classes.get(&k) {
            if *p == k {
                break;
            }
            k = p.clone();
        }
        k
    }
    for (x, y) in a.terms().iter().zip(b.terms()) {
        let key = |t: &PatternTerm, left: bool| match t {
            PatternTerm::Var(v) => Err(if left { Key::L(v.clone()) } else { Key::R(v.clone()) }),
            PatternTerm::Const(c) => Ok(c.clone()),
        };
        match (key(x, true), key(y, false)) {
            (Ok(c1), Ok(c2)) => {
                if c1 != c2 {
                    return false;
                }
            }
            (Err(v), Ok(c)) | (Ok(c), Err(v)) => {
                let root = find(&classes, &v);
                match bound.get(&root) {
                    Some(existing) if *existing != c => return false,
                    _ => {
                        bound.insert(root, c);
                    }
                }
            }
            (Err(v1), Err(v2)) => {
                let r1 = find(&classes, &v1);
                let r2 = find(&classes, &v2);
                if r1 != r2 {
                    match (bound.get(&r1).cloned(), bound.get(&r2).cloned()) {
                        (Some(c1), Some(c2)) if c1 != c2 => return false,
                        (Some(c1), _) => {
                            bound.insert(r2.clone(), c1);
                        }
                        _ => {}
                    }
                    classes.insert(r1, r2);
                }
            }
        }
    }
    true
}

#[test]
fn edges_agree_with_full_unification() {
    let rules: Vec<&Rule> = catalog().iter().collect();
    for producer in &rules {
        for consumer in &rules {
            let oracle = producer
                .consequences
                .iter()
                .any(|c| consumer.conditions.iter().any(|d| unifiable(c, d)));
            assert_eq!(
                depends_on(consumer, producer),
                oracle,
                "{} -> {}",
                producer.id,
                consumer.id
            );
        }
    }
}

#[test]
fn global_graph_respects_exclusions_and_has_no_self_loops() {
    let g = global_graph(&Exclusions::default());
    for (a, b) in g.edges() {
        assert_ne!(a.label, b.label);
        let excl = Exclusions::default();
        assert!(!excl.contains(a.members[0], b.members[0]), "{} -> {}", a.label, b.label);
    }
    let open = global_graph(&Exclusions::none());
    assert!(open.has_edge("O3", "O7a"));
    assert!(!g.has_edge("O3", "O7a"));
}

type ParsedDot = (BTreeSet<String>, BTreeSet<(String, String)>);

/// Minimal DOT reader for what `export_dot` emits: node statements and
/// edge statements with an optional `[dir=both]`.
fn parse_dot(text: &str) -> Result<ParsedDot, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty")?;
    if header.trim() != "digraph {" {
        return Err(format!("bad header {header:?}"));
    }
    let mut nodes = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let mut closed = false;
    for line in lines {
        let line = line.trim();
        if closed {
            return Err(format!("content after closing brace: {line:?}"));
        }
        if line == "}" {
            closed = true;
            continue;
        }
        let stmt = line.strip_suffix(';').ok_or(format!("missing semicolon: {line:?}"))?;
        let quoted = |s: &str| -> Result<String, String> {
            let s = s.trim();
            let inner = s
                .strip_prefix('"')
                .and_then(|s| s.strip_suffix('"'))
                .ok_or(format!("unquoted id {s:?}"))?;
            if inner.contains('"') {
                return Err(format!("stray quote in {s:?}"));
            }
            Ok(inner.to_string())
        };
        match stmt.split_once("->") {
            None => {
                nodes.insert(quoted(stmt)?);
            }
            Some((from, rest)) => {
                let (to, both) = match rest.split_once('[') {
                    Some((to, attrs)) if attrs.trim() == "dir=both]" => (to, true),
                    Some(_) => return Err(format!("unknown attributes in {line:?}")),
                    None => (rest, false),
                };
                let (from, to) = (quoted(from)?, quoted(to)?);
                if !nodes.contains(&from) || !nodes.contains(&to) {
                    return Err(format!("edge before node declaration: {line:?}"));
                }
                if both {
                    edges.insert((to.clone(), from.clone()));
                }
                edges.insert((from, to));
            }
        }
    }
    if !closed {
        return Err("missing closing brace".into());
    }
    Ok((nodes, edges))
}

#[test]
fn dot_export_round_trips_through_a_reader() {
    let mut graphs: Vec<DependencyGraph> = RuleClass::ALL
        .iter()
        .flat_map(|&c| {
            let g = class_graph(c, &Exclusions::default());
            [g.merged(&display_groups(c)), g]
        })
        .collect();
    graphs.push(global_graph(&Exclusions::default()));
    graphs.push(build_graph(&[], &Exclusions::default()));
    for g in graphs {
        let (nodes, edges) = parse_dot(&export_dot(&g)).unwrap();
        let expected_nodes: BTreeSet<String> = g.nodes().iter().map(|n| n.label.clone()).collect();
        assert_eq!(nodes, expected_nodes);
        assert_eq!(edges, g.edge_labels());
    }
}

#[test]
fn dot_reader_rejects_malformed_input() {
    assert!(parse_dot("digraph {\n  \"A\" -> \"B\";\n}\n").is_err());
    assert!(parse_dot("digraph {\n  \"A\"\n}\n").is_err());
    assert!(parse_dot("digraph {\n  \"A\";\n").is_err());
    assert!(parse_dot("graph {\n}\n").is_err());
}
