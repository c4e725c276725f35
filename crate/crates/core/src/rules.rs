//! Declarative encoding of the 27 OWL-Horst entailment rules.
//!
//! Variables are plain names; constants are written with the `rdf:`, `rdfs:`
//! and `owl:` prefixes and expanded to full IRIs. The catalog is built once
//! and shared.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::model::{vocab, Term};

macro_rules! rule_ids {
    ($($v:ident => $s:literal),* $(,)?) => {
        /// Rule identifiers, ordered as in the rule table.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum RuleId { $($v),* }

        impl RuleId {
            pub const ALL: [RuleId; 27] = [$(RuleId::$v),*];

            pub fn as_str(self) -> &'static str {
                match self { $(RuleId::$v => $s),* }
            }
        }

        impl FromStr for RuleId {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($s => Ok(RuleId::$v),)*
                    other => Err(format!("unknown rule id {other:?}")),
                }
            }
        }
    };
}

rule_ids! {
    R1 => "R1", R2 => "R2", R3 => "R3", R4 => "R4", R5 => "R5", R6 => "R6",
    O1 => "O1", O2 => "O2", O3 => "O3", O4 => "O4", O5 => "O5", O6 => "O6",
    O7a => "O7a", O7b => "O7b", O8 => "O8", O9 => "O9", O10 => "O10",
    O11a => "O11a", O11b => "O11b", O11c => "O11c",
    O12a => "O12a", O12b => "O12b", O12c => "O12c",
    O13 => "O13", O14 => "O14", O15 => "O15", O16 => "O16",
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The four rule classes, listed in pipeline order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleClass {
    Schema,
    Spo,
    Type,
    SameAs,
}

impl RuleClass {
    pub const ALL: [RuleClass; 4] = [
        RuleClass::Schema,
        RuleClass::Spo,
        RuleClass::Type,
        RuleClass::SameAs,
    ];
}

impl fmt::Display for RuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleClass::Schema => "schema",
            RuleClass::Spo => "SPO",
            RuleClass::Type => "type",
            RuleClass::SameAs => "sameAs",
        })
    }
}

impl FromStr for RuleClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "schema" => Ok(RuleClass::Schema),
            "spo" => Ok(RuleClass::Spo),
            "type" => Ok(RuleClass::Type),
            "sameas" => Ok(RuleClass::SameAs),
            other => Err(format!("unknown rule class {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Var(String),
    Const(Term),
}

impl PatternTerm {
    fn parse(token: &str) -> Self {
        if ["rdf:", "rdfs:", "owl:"].iter().any(|p| token.starts_with(p)) {
            PatternTerm::Const(Term::Iri(vocab::expand(token)))
        } else {
            PatternTerm::Var(token.to_string())
        }
    }

    pub fn var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Const(_) => None,
        }
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Const(Term::Iri(iri)) => f.write_str(&vocab::compact(iri)),
            PatternTerm::Const(t) => write!(f, "{t}"),
        }
    }
}

impl Serialize for PatternTerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TriplePattern {
    pub s: PatternTerm,
    pub p: PatternTerm,
    pub o: PatternTerm,
}

impl TriplePattern {
    /// Parses `"c rdfs:subClassOf c1"`.
    pub fn parse(text: &str) -> Self {
        let parts: Vec<&str> = text.split_whitespace().collect();
        assert_eq!(parts.len(), 3, "pattern needs three terms: {text:?}");
        TriplePattern {
            s: PatternTerm::parse(parts[0]),
            p: PatternTerm::parse(parts[1]),
            o: PatternTerm::parse(parts[2]),
        }
    }

    pub fn terms(&self) -> [&PatternTerm; 3] {
        [&self.s, &self.p, &self.o]
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.terms().into_iter().filter_map(PatternTerm::var)
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.s, self.p, self.o)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub id: RuleId,
    pub class: RuleClass,
    pub enabled: bool,
    pub conditions: Vec<TriplePattern>,
    pub consequences: Vec<TriplePattern>,
    /// Variable pairs that must bind to different terms.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub distinct: Vec<(String, String)>,
}

impl Rule {
    fn new(id: RuleId, class: RuleClass, conditions: &[&str], consequences: &[&str]) -> Self {
        Rule {
            id,
            class,
            enabled: true,
            conditions: conditions.iter().map(|c| TriplePattern::parse(c)).collect(),
            consequences: consequences.iter().map(|c| TriplePattern::parse(c)).collect(),
            distinct: Vec::new(),
        }
    }

    fn disabled(mut self) -> Self {
        self.enabled = false;
        self
    }

    fn with_distinct(mut self, a: &str, b: &str) -> Self {
        self.distinct.push((a.to_string(), b.to_string()));
        self
    }

    /// Consequence variables missing from every condition.
    pub fn unbound_consequence_vars(&self) -> BTreeSet<&str> {
        let bound: BTreeSet<&str> = self.conditions.iter().flat_map(|c| c.vars()).collect();
        self.consequences
            .iter()
            .flat_map(|c| c.vars())
            .chain(self.distinct.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()]))
            .filter(|v| !bound.contains(v))
            .collect()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ps: &[TriplePattern]| {
            ps.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{}: {} => {}",
            self.id,
            join(&self.conditions),
            join(&self.consequences)
        )?;
        for (a, b) in &self.distinct {
            write!(f, " where ?{a} != ?{b}")?;
        }
        Ok(())
    }
}

/// Which bodies to use for O13 and O14.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CatalogVariant {
    /// pD* semantics for the hasValue rules.
    #[default]
    Standard,
    /// The hasValue rules exactly as printed in the rule table.
    Table1Literal,
}

/// The standard rule catalog.
pub fn catalog() -> &'static [Rule] {
    catalog_variant(CatalogVariant::Standard)
}

pub fn catalog_variant(variant: CatalogVariant) -> &'static [Rule] {
    static STANDARD: OnceLock<Vec<Rule>> = OnceLock::new();
    static LITERAL: OnceLock<Vec<Rule>> = OnceLock::new();
    let cell = match variant {
        CatalogVariant::Standard => &STANDARD,
        CatalogVariant::Table1Literal => &LITERAL,
    };
    cell.get_or_init(|| {
        let rules = build_catalog(variant);
        validate(&rules).expect("shipped catalog is range-restricted");
        rules
    })
}

pub fn rule(id: RuleId) -> &'static Rule {
    &catalog()[id as usize]
}

/// Checks range restriction for every rule.
pub fn validate(rules: &[Rule]) -> Result<(), String> {
    for r in rules {
        let unbound = r.unbound_consequence_vars();
        if !unbound.is_empty() {
            return Err(format!("rule {} has unbound variables {unbound:?}", r.id));
        }
    }
    Ok(())
}

pub fn rule_class_counts(rules: &[Rule]) -> BTreeMap<RuleClass, usize> {
    let mut counts = BTreeMap::new();
    for r in rules {
        *counts.entry(r.class).or_insert(0) += 1;
    }
    counts
}

fn build_catalog(variant: CatalogVariant) -> Vec<Rule> {
    use RuleClass::*;
    use RuleId::*;
    let (o13, o14) = match variant {
        CatalogVariant::Standard => (
            Rule::new(
                O13,
                Type,
                &["v owl:hasValue w", "v owl:onProperty p", "u p w"],
                &["u rdf:type v"],
            ),
            Rule::new(
                O14,
                Type,
                &["v owl:hasValue w", "v owl:onProperty p", "u rdf:type v"],
                &["u p w"],
            ),
        ),
        CatalogVariant::Table1Literal => (
            Rule::new(
                O13,
                Type,
                &["v owl:hasValue w", "v owl:onProperty p", "u p v"],
                &["u rdf:type v"],
            ),
            Rule::new(
                O14,
                Type,
                &["v owl:hasValue w", "v owl:onProperty p", "u rdf:type v"],
                &["u p v"],
            ),
        ),
    };
    vec![
        Rule::new(
            R1,
            Schema,
            &["c rdfs:subClassOf c1", "c1 rdfs:subClassOf c2"],
            &["c rdfs:subClassOf c2"],
        ),
        Rule::new(
            R2,
            Schema,
            &["p rdfs:subPropertyOf p1", "p1 rdfs:subPropertyOf p2"],
            &["p rdfs:subPropertyOf p2"],
        ),
        Rule::new(R3, Spo, &["s p o", "p rdfs:subPropertyOf p1"], &["s p1 o"]),
        Rule::new(R4, Type, &["s rdfs:domain x", "u s y"], &["u rdf:type x"]),
        Rule::new(R5, Type, &["p rdfs:range o", "s p v"], &["v rdf:type o"]),
        Rule::new(
            R6,
            Type,
            &["c rdfs:subClassOf c1", "v rdf:type c"],
            &["v rdf:type c1"],
        ),
        Rule::new(
            O1,
            SameAs,
            &["p rdf:type owl:FunctionalProperty", "u p v", "u p w"],
            &["v owl:sameAs w"],
        )
        .with_distinct("v", "w"),
        Rule::new(
            O2,
            SameAs,
            &["p rdf:type owl:InverseFunctionalProperty", "v p u", "w p u"],
            &["v owl:sameAs w"],
        )
        .with_distinct("v", "w"),
        Rule::new(
            O3,
            Spo,
            &["p rdf:type owl:SymmetricProperty", "v p u"],
            &["u p v"],
        ),
        Rule::new(
            O4,
            Spo,
            &["p rdf:type owl:TransitiveProperty", "u p w", "w p v"],
            &["u p v"],
        ),
        Rule::new(O5, SameAs, &["v owl:sameAs w"], &["w owl:sameAs v"]),
        Rule::new(
            O6,
            SameAs,
            &["v owl:sameAs w", "w owl:sameAs u"],
            &["v owl:sameAs u"],
        ),
        Rule::new(O7a, Spo, &["p owl:inverseOf q", "v p w"], &["w q v"]),
        Rule::new(O7b, Spo, &["p owl:inverseOf q", "v q w"], &["w p v"]),
        Rule::new(
            O8,
            SameAs,
            &["v rdf:type owl:Class", "v owl:sameAs w"],
            &["v rdfs:subClassOf w"],
        )
        .disabled(),
        Rule::new(
            O9,
            SameAs,
            &["p rdf:type owl:Property", "p owl:sameAs q"],
            &["p rdfs:subPropertyOf q"],
        )
        .disabled(),
        Rule::new(
            O10,
            SameAs,
            &["u p v", "u owl:sameAs x", "v owl:sameAs y"],
            &["x p y"],
        ),
        Rule::new(
            O11a,
            Schema,
            &["v owl:equivalentClass w"],
            &["v rdfs:subClassOf w"],
        ),
        Rule::new(
            O11b,
            Schema,
            &["v owl:equivalentClass w"],
            &["w rdfs:subClassOf v"],
        ),
        Rule::new(
            O11c,
            Schema,
            &["v rdfs:subClassOf w", "w rdfs:subClassOf v"],
            &["v owl:equivalentClass w"],
        ),
        Rule::new(
            O12a,
            Schema,
            &["v owl:equivalentProperty w"],
            &["v rdfs:subPropertyOf w"],
        ),
        Rule::new(
            O12b,
            Schema,
            &["v owl:equivalentProperty w"],
            &["w rdfs:subPropertyOf v"],
        ),
        Rule::new(
            O12c,
            Schema,
            &["v rdfs:subPropertyOf w", "w rdfs:subPropertyOf v"],
            &["v owl:equivalentProperty w"],
        ),
        o13,
        o14,
        Rule::new(
            O15,
            Type,
            &[
                "v owl:someValuesFrom w",
                "v owl:onProperty p",
                "u p x",
                "x rdf:type w",
            ],
            &["u rdf:type v"],
        ),
        Rule::new(
            O16,
            Type,
            &[
                "v owl:allValuesFrom w",
                "v owl:onProperty p",
                "u rdf:type v",
                "u p x",
            ],
            &["x rdf:type w"],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_line_up_with_positions() {
        for (i, r) in catalog().iter().enumerate() {
            assert_eq!(r.id as usize, i);
            assert_eq!(RuleId::ALL[i], r.id);
            assert_eq!(r.id.as_str().parse::<RuleId>().unwrap(), r.id);
        }
    }

    #[test]
    fn class_counts_are_5_7_7_8() {
        let counts = rule_class_counts(catalog());
        assert_eq!(counts[&RuleClass::Spo], 5);
        assert_eq!(counts[&RuleClass::Type], 7);
        assert_eq!(counts[&RuleClass::SameAs], 7);
        assert_eq!(counts[&RuleClass::Schema], 8);
        assert_eq!(counts.values().sum::<usize>(), 27);
    }

    #[test]
    fn class_membership() {
        use RuleId::*;
        let members = |c| -> Vec<RuleId> {
            catalog()
                .iter()
                .filter(|r| r.class == c)
                .map(|r| r.id)
                .collect()
        };
        assert_eq!(members(RuleClass::Spo), [R3, O3, O4, O7a, O7b]);
        assert_eq!(members(RuleClass::Type), [R4, R5, R6, O13, O14, O15, O16]);
        assert_eq!(members(RuleClass::SameAs), [O1, O2, O5, O6, O8, O9, O10]);
        assert_eq!(
            members(RuleClass::Schema),
            [R1, R2, O11a, O11b, O11c, O12a, O12b, O12c]
        );
    }

    #[test]
    fn r1_and_o4_shapes() {
        let r1 = rule(RuleId::R1);
        assert_eq!(
            r1.conditions,
            vec![
                TriplePattern::parse("c rdfs:subClassOf c1"),
                TriplePattern::parse("c1 rdfs:subClassOf c2")
            ]
        );
        assert_eq!(r1.consequences, vec![TriplePattern::parse("c rdfs:subClassOf c2")]);
        let o4 = rule(RuleId::O4);
        assert_eq!(
            o4.conditions[0].to_string(),
            "?p rdf:type owl:TransitiveProperty"
        );
        assert_eq!(o4.consequences[0].to_string(), "?u ?p ?v");
    }

    #[test]
    fn only_o8_o9_disabled() {
        let disabled: Vec<_> = catalog().iter().filter(|r| !r.enabled).map(|r| r.id).collect();
        assert_eq!(disabled, [RuleId::O8, RuleId::O9]);
    }

    #[test]
    fn both_variants_range_restricted_and_frozen() {
        for v in [CatalogVariant::Standard, CatalogVariant::Table1Literal] {
            assert!(validate(catalog_variant(v)).is_ok());
            assert!(std::ptr::eq(catalog_variant(v), catalog_variant(v)));
        }
        assert_eq!(build_catalog(CatalogVariant::Standard), catalog());
        let literal = catalog_variant(CatalogVariant::Table1Literal);
        assert_eq!(literal[RuleId::O14 as usize].consequences[0].to_string(), "?u ?p ?v");
    }

    #[test]
    fn unbound_variable_detected() {
        let bad = Rule::new(RuleId::R1, RuleClass::Schema, &["a rdf:type b"], &["a rdf:type z"]);
        assert!(validate(&[bad]).is_err());
    }
}
