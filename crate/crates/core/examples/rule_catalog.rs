//! Lists the rule catalog grouped by class, with the executor's order.

use horst::planner::optimal_order;
use horst::rules::{catalog, catalog_variant, rule_class_counts, CatalogVariant, RuleClass};

fn main() {
    let counts = rule_class_counts(catalog());
    for class in RuleClass::ALL {
        println!("== {class} ({} rules)", counts[&class]);
        for r in catalog().iter().filter(|r| r.class == class) {
            let status = if r.enabled { "" } else { " (disabled)" };
            println!("  {r}{status}");
        }
        println!("  order: {}", optimal_order(class).display());
    }

    println!("\nhasValue rules as tabulated:");
    for r in catalog_variant(CatalogVariant::Table1Literal)
        .iter()
        .filter(|r| matches!(r.id.as_str(), "O13" | "O14"))
    {
        println!("  {r}");
    }
}
