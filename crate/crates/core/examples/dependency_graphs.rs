//! Builds each class graph, prints its DOT rendering and maximal paths, and
//! checks that the published class orders are among them.
//!
//! `cargo run --example dependency_graphs -- all` also enumerates the global
//! graph, capped at 100000 paths.

use horst::planner::{
    class_graph, display_groups, enumerate_strategies, export_dot, global_graph, grouped_labels,
    reference_orders, Exclusions,
};
use horst::rules::RuleClass;

fn main() {
    let exclusions = Exclusions::default();
    for class in RuleClass::ALL {
        let graph = class_graph(class, &exclusions).merged(&display_groups(class));
        let paths = enumerate_strategies(&graph, None);
        println!("== {class}: {} maximal paths", paths.strategies.len());
        print!("{}", export_dot(&graph));
        for row in reference_orders(class) {
            let labels = grouped_labels(class, &row);
            let found = paths.strategies.iter().any(|s| s.labels == labels);
            println!("  {:<40} {}", row.join(" -> "), if found { "found" } else { "MISSING" });
        }
    }

    if std::env::args().nth(1).as_deref() == Some("all") {
        let graph = global_graph(&exclusions);
        let paths = enumerate_strategies(&graph, Some(100_000));
        println!(
            "global graph: {} nodes, {} edges, {} paths{}, longest {} rules",
            graph.nodes().len(),
            graph.edge_count(),
            paths.strategies.len(),
            if paths.truncated { " (truncated)" } else { "" },
            paths.strategies.first().map_or(0, |s| s.len())
        );
    }
}
