//! Rule dependency graphs and executable strategies.
//!
//! An edge `i -> j` means some consequence of rule `i` can instantiate a
//! condition of rule `j`, so running `i` first lets `j` see its output.
//! Strategies are simple paths through this graph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::rules::{catalog, PatternTerm, Rule, RuleClass, RuleId, TriplePattern};

/// Unordered rule pairs whose dependency is suppressed by domain knowledge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exclusions(BTreeSet<(RuleId, RuleId)>);

impl Exclusions {
    pub fn none() -> Self {
        Exclusions(BTreeSet::new())
    }

    pub fn new<I: IntoIterator<Item = (RuleId, RuleId)>>(pairs: I) -> Self {
        Exclusions(pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect())
    }

    pub fn contains(&self, a: RuleId, b: RuleId) -> bool {
        self.0.contains(&(a.min(b), a.max(b)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (RuleId, RuleId)> + '_ {
        self.0.iter().copied()
    }
}

/// A property is never both symmetric and an inverse of another one in
/// practice, so O3 and O7a/O7b do not feed each other.
impl Default for Exclusions {
    fn default() -> Self {
        Exclusions::new([(RuleId::O3, RuleId::O7a), (RuleId::O3, RuleId::O7b)])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub label: String,
    /// Rules in catalog order; more than one for display groups.
    pub members: Vec<RuleId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    nodes: Vec<Node>,
    edges: BTreeSet<(usize, usize)>,
}

/// Position-wise unification: constants must be equal, variables match anything.
pub fn patterns_unify(a: &TriplePattern, b: &TriplePattern) -> bool {
    a.terms().iter().zip(b.terms()).all(|(x, y)| match (x, y) {
        (PatternTerm::Const(c1), PatternTerm::Const(c2)) => c1 == c2,
        _ => true,
    })
}

/// Whether `consumer` depends on `producer`.
pub fn depends_on(consumer: &Rule, producer: &Rule) -> bool {
    producer.consequences.iter().any(|head| {
        consumer
            .conditions
            .iter()
            .any(|body| patterns_unify(head, body))
    })
}

/// Builds the graph over `rules`; self-dependencies are not edges.
pub fn build_graph(rules: &[&Rule], exclusions: &Exclusions) -> DependencyGraph {
    let mut rules: Vec<&Rule> = rules.to_vec();
    rules.sort_by_key(|r| r.id);
    rules.dedup_by_key(|r| r.id);
    let nodes = rules
        .iter()
        .map(|r| Node {
            label: r.id.to_string(),
            members: vec![r.id],
        })
        .collect();
    let mut edges = BTreeSet::new();
    for (i, producer) in rules.iter().enumerate() {
        for (j, consumer) in rules.iter().enumerate() {
            if i != j
                && !exclusions.contains(producer.id, consumer.id)
                && depends_on(consumer, producer)
            {
                edges.insert((i, j));
            }
        }
    }
    DependencyGraph { nodes, edges }
}

/// Graph over the enabled rules of one class.
pub fn class_graph(class: RuleClass, exclusions: &Exclusions) -> DependencyGraph {
    let rules: Vec<&Rule> = catalog()
        .iter()
        .filter(|r| r.enabled && r.class == class)
        .collect();
    build_graph(&rules, exclusions)
}

/// Graph over all enabled rules.
pub fn global_graph(exclusions: &Exclusions) -> DependencyGraph {
    let rules: Vec<&Rule> = catalog().iter().filter(|r| r.enabled).collect();
    build_graph(&rules, exclusions)
}

/// Rules the class orders treat as interchangeable: O7a/O7b act as one
/// inverse rule, R4/R5 consume no type triples, O11a/O11b and O12a/O12b
/// produce mirror-image triples.
pub fn display_groups(class: RuleClass) -> Vec<(&'static str, Vec<RuleId>)> {
    use RuleId::*;
    match class {
        RuleClass::Spo => vec![("O7", vec![O7a, O7b])],
        RuleClass::Type => vec![("R4+R5", vec![R4, R5])],
        RuleClass::Schema => vec![
            ("O11a+O11b", vec![O11a, O11b]),
            ("O12a+O12b", vec![O12a, O12b]),
        ],
        RuleClass::SameAs => vec![],
    }
}

impl DependencyGraph {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Node, &Node)> + '_ {
        self.edges
            .iter()
            .map(|&(i, j)| (&self.nodes[i], &self.nodes[j]))
    }

    /// Edges as `(producer label, consumer label)`.
    pub fn edge_labels(&self) -> BTreeSet<(String, String)> {
        self.edges()
            .map(|(a, b)| (a.label.clone(), b.label.clone()))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        match (self.index_of(from), self.index_of(to)) {
            (Some(i), Some(j)) => self.edges.contains(&(i, j)),
            _ => false,
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == label)
    }

    /// Collapses each group into one node labelled with its name. An edge
    /// survives between groups if any member edge existed; edges inside a
    /// group vanish.
    pub fn merged(&self, groups: &[(&str, Vec<RuleId>)]) -> DependencyGraph {
        let group_of = |r: RuleId| groups.iter().position(|(_, ms)| ms.contains(&r));
        let mut nodes: Vec<Node> = Vec::new();
        let mut mapping = vec![0; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            let label = match group_of(node.members[0]) {
                Some(g) => groups[g].0.to_string(),
                None => node.label.clone(),
            };
            let idx = match nodes.iter().position(|n| n.label == label) {
                Some(idx) => {
                    nodes[idx].members.extend(&node.members);
                    idx
                }
                None => {
                    nodes.push(Node {
                        label,
                        members: node.members.clone(),
                    });
                    nodes.len() - 1
                }
            };
            mapping[i] = idx;
        }
        let edges = self
            .edges
            .iter()
            .map(|&(i, j)| (mapping[i], mapping[j]))
            .filter(|(i, j)| i != j)
            .collect();
        for n in &mut nodes {
            n.members.sort();
        }
        DependencyGraph { nodes, edges }
    }

    fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j)
    }

    fn has_predecessor_outside(&self, i: usize, path: &[usize]) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| b == i && !path.contains(&a))
    }

    fn strategy(&self, path: &[usize]) -> Strategy {
        Strategy {
            labels: path.iter().map(|&i| self.nodes[i].label.clone()).collect(),
            order: path
                .iter()
                .flat_map(|&i| self.nodes[i].members.iter().copied())
                .collect(),
        }
    }
}

/// An execution order: consecutive entries are joined by a dependency edge
/// and nothing repeats.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Strategy {
    /// Node labels along the path.
    pub labels: Vec<String>,
    /// Rules in execution order, group members expanded.
    pub order: Vec<RuleId>,
}

impl Strategy {
    pub fn from_rules(order: Vec<RuleId>) -> Self {
        Strategy {
            labels: order.iter().map(ToString::to_string).collect(),
            order,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn display(&self) -> String {
        self.labels.join(" -> ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub strategies: Vec<Strategy>,
    /// Enumeration stopped at the limit.
    pub truncated: bool,
}

/// All maximal simple paths (not extendable at either end), longest first,
/// ties broken by the rule sequence.
pub fn enumerate_strategies(g: &DependencyGraph, limit: Option<usize>) -> Enumeration {
    let limit = limit.unwrap_or(usize::MAX);
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut truncated = false;
    let mut path = Vec::new();
    let mut on_path = vec![false; g.nodes.len()];
    for start in 0..g.nodes.len() {
        path.push(start);
        on_path[start] = true;
        if !dfs(g, &mut path, &mut on_path, &mut found, limit) {
            truncated = true;
        }
        on_path[start] = false;
        path.pop();
        if truncated {
            break;
        }
    }
    let mut strategies: Vec<Strategy> = found.iter().map(|p| g.strategy(p)).collect();
    strategies.sort_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then_with(|| a.order.cmp(&b.order))
            .then_with(|| a.labels.cmp(&b.labels))
    });
    Enumeration {
        strategies,
        truncated,
    }
}

/// Returns false once `limit` paths have been collected.
fn dfs(
    g: &DependencyGraph,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
    limit: usize,
) -> bool {
    let last = *path.last().expect("non-empty path");
    let mut extended = false;
    let next: Vec<usize> = g.successors(last).filter(|&j| !on_path[j]).collect();
    for j in next {
        extended = true;
        path.push(j);
        on_path[j] = true;
        let keep_going = dfs(g, path, on_path, found, limit);
        on_path[j] = false;
        path.pop();
        if !keep_going {
            return false;
        }
    }
    if !extended && !g.has_predecessor_outside(path[0], path) {
        if found.len() >= limit {
            return false;
        }
        found.push(path.clone());
    }
    true
}

/// Canonical per-class orders used by the executor.
pub fn optimal_order(class: RuleClass) -> Strategy {
    use RuleId::*;
    let order = match class {
        RuleClass::Schema => vec![O11a, O11b, R1, O11c, O12a, O12b, R2, O12c],
        RuleClass::Spo => vec![O3, R3, O7a, O7b, O4],
        RuleClass::Type => vec![R4, R5, R6, O14, O13, O15, O16],
        RuleClass::SameAs => vec![O1, O10, O2, O6, O5],
    };
    Strategy::from_rules(order)
}

/// The published per-class optimal orders. Steps name rules or a
/// comma-separated set of rules run without mutual order; `O7` stands for
/// O7a/O7b.
pub fn reference_orders(class: RuleClass) -> Vec<Vec<&'static str>> {
    match class {
        RuleClass::Spo => vec![vec!["O3", "R3", "O7", "O4"], vec!["O7", "R3", "O3", "O4"]],
        RuleClass::Type => vec![
            vec!["R4", "R6", "O14", "O13", "O15", "O16"],
            vec!["R4", "R6", "O14", "O13", "O16", "O15"],
            vec!["R5", "R6", "O14", "O13", "O15", "O16"],
            vec!["R5", "R6", "O14", "O13", "O16", "O15"],
        ],
        RuleClass::Schema => vec![
            vec!["O11a,O11b", "R1", "O11c"],
            vec!["O12a,O12b", "R2", "O12c"],
        ],
        RuleClass::SameAs => vec![
            vec!["O1", "O10", "O2", "O6", "O5"],
            vec!["O2", "O10", "O1", "O6", "O5"],
        ],
    }
}

/// Maps a published order onto node labels of the class graph merged with
/// [`display_groups`].
pub fn grouped_labels(class: RuleClass, steps: &[&str]) -> Vec<String> {
    let groups = display_groups(class);
    steps
        .iter()
        .map(|step| {
            let first = step.split(',').next().unwrap_or(step).trim();
            groups
                .iter()
                .find(|(name, members)| {
                    *name == first || members.iter().any(|m| m.as_str() == first)
                })
                .map(|(name, _)| name.to_string())
                .unwrap_or_else(|| first.to_string())
        })
        .collect()
}

/// Renders the graph as DOT. Mutual edges become one `dir=both` edge.
pub fn export_dot(g: &DependencyGraph) -> String {
    let mut out = String::from("digraph {\n");
    for n in &g.nodes {
        let _ = writeln!(out, "  \"{}\";", n.label);
    }
    for &(i, j) in &g.edges {
        let mutual = g.edges.contains(&(j, i));
        if mutual && j < i {
            continue;
        }
        let attrs = if mutual { " [dir=both]" } else { "" };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\"{attrs};",
            g.nodes[i].label, g.nodes[j].label
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::rule;

    fn labels(pairs: &[(&str, &str)]) -> BTreeSet<(String, String)> {
        pairs
            .iter()
            .flat_map(|&(a, b)| [(a.to_string(), b.to_string()), (b.to_string(), a.to_string())])
            .collect()
    }

    #[test]
    fn spo_graph_edge_set() {
        let g = class_graph(RuleClass::Spo, &Exclusions::default())
            .merged(&display_groups(RuleClass::Spo));
        assert_eq!(g.nodes().len(), 4);
        assert_eq!(
            g.edge_labels(),
            labels(&[("R3", "O7"), ("R3", "O3"), ("R3", "O4"), ("O3", "O4"), ("O7", "O4")])
        );
        assert!(!g.has_edge("O3", "O7") && !g.has_edge("O7", "O3"));
    }

    #[test]
    fn single_rule_without_self_edges() {
        let g = build_graph(&[rule(RuleId::O5)], &Exclusions::none());
        assert_eq!(g.edge_count(), 0);
        let e = enumerate_strategies(&g, None);
        assert_eq!(e.strategies.len(), 1);
        assert_eq!(e.strategies[0].order, vec![RuleId::O5]);
    }

    #[test]
    fn o14_feeds_r3_globally() {
        let g = global_graph(&Exclusions::default());
        for target in ["R3", "O3", "O4", "O7a", "O7b"] {
            assert!(g.has_edge("O14", target), "O14 -> {target}");
        }
    }

    #[test]
    fn no_edges_means_singleton_paths() {
        let g = build_graph(&[rule(RuleId::R1), rule(RuleId::R2)], &Exclusions::none());
        assert_eq!(g.edge_count(), 0);
        let e = enumerate_strategies(&g, None);
        let orders: Vec<_> = e.strategies.iter().map(|s| s.order.clone()).collect();
        assert_eq!(orders, vec![vec![RuleId::R1], vec![RuleId::R2]]);
    }

    #[test]
    fn limit_truncates() {
        let g = class_graph(RuleClass::Type, &Exclusions::default());
        let e = enumerate_strategies(&g, Some(10));
        assert!(e.truncated);
        assert_eq!(e.strategies.len(), 10);
    }

    #[test]
    fn published_orders_are_maximal_paths() {
        for class in RuleClass::ALL {
            let g = class_graph(class, &Exclusions::default()).merged(&display_groups(class));
            let e = enumerate_strategies(&g, None);
            for row in reference_orders(class) {
                let want = grouped_labels(class, &row);
                assert!(e.strategies.iter().any(|s| s.labels == want), "{class}: {row:?}");
            }
        }
    }

    #[test]
    fn empty_graph_dot() {
        let g = build_graph(&[], &Exclusions::none());
        assert_eq!(export_dot(&g), "digraph {\n}\n");
    }

    #[test]
    fn spo_dot_uses_dir_both() {
        let g = class_graph(RuleClass::Spo, &Exclusions::default())
            .merged(&display_groups(RuleClass::Spo));
        let dot = export_dot(&g);
        assert_eq!(dot.matches("dir=both").count(), 5);
        assert_eq!(dot.matches("->").count(), 5);
    }
}
