//! Well-known RDF, RDFS and OWL IRIs and their resolved ids.

use super::dictionary::{Dictionary, TermId};
use super::term::Term;

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDFS_SUB_PROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
pub const OWL_EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
pub const OWL_EQUIVALENT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#equivalentProperty";
pub const OWL_INVERSE_OF: &str = "http://www.w3.org/2002/07/owl#inverseOf";
pub const OWL_HAS_VALUE: &str = "http://www.w3.org/2002/07/owl#hasValue";
pub const OWL_ON_PROPERTY: &str = "http://www.w3.org/2002/07/owl#onProperty";
pub const OWL_SOME_VALUES_FROM: &str = "http://www.w3.org/2002/07/owl#someValuesFrom";
pub const OWL_ALL_VALUES_FROM: &str = "http://www.w3.org/2002/07/owl#allValuesFrom";
pub const OWL_FUNCTIONAL_PROPERTY: &str = "http://www.w3.org/2002/07/owl#FunctionalProperty";
pub const OWL_INVERSE_FUNCTIONAL_PROPERTY: &str =
    "http://www.w3.org/2002/07/owl#InverseFunctionalProperty";
pub const OWL_SYMMETRIC_PROPERTY: &str = "http://www.w3.org/2002/07/owl#SymmetricProperty";
pub const OWL_TRANSITIVE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#TransitiveProperty";
pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
// Not an OWL 2 term; kept because O9 conditions on it.
pub const OWL_PROPERTY: &str = "http://www.w3.org/2002/07/owl#Property";
pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
pub const OWL_RESTRICTION: &str = "http://www.w3.org/2002/07/owl#Restriction";

/// Predicates whose triples are always schema triples.
pub const SCHEMA_PREDICATES: [&str; 11] = [
    RDFS_SUB_CLASS_OF,
    RDFS_SUB_PROPERTY_OF,
    RDFS_DOMAIN,
    RDFS_RANGE,
    OWL_EQUIVALENT_CLASS,
    OWL_EQUIVALENT_PROPERTY,
    OWL_INVERSE_OF,
    OWL_HAS_VALUE,
    OWL_ON_PROPERTY,
    OWL_SOME_VALUES_FROM,
    OWL_ALL_VALUES_FROM,
];

/// Objects that make an `rdf:type` triple a schema triple.
pub const SCHEMA_TYPE_OBJECTS: [&str; 9] = [
    OWL_FUNCTIONAL_PROPERTY,
    OWL_INVERSE_FUNCTIONAL_PROPERTY,
    OWL_SYMMETRIC_PROPERTY,
    OWL_TRANSITIVE_PROPERTY,
    OWL_CLASS,
    OWL_PROPERTY,
    OWL_OBJECT_PROPERTY,
    OWL_DATATYPE_PROPERTY,
    OWL_RESTRICTION,
];

/// Expands `rdf:`, `rdfs:` and `owl:` prefixes; anything else is returned as is.
pub fn expand(curie: &str) -> String {
    for (prefix, ns) in [("rdf:", RDF), ("rdfs:", RDFS), ("owl:", OWL)] {
        if let Some(local) = curie.strip_prefix(prefix) {
            return format!("{ns}{local}");
        }
    }
    curie.to_string()
}

/// Compacts a well-known IRI back to its prefixed form.
pub fn compact(iri: &str) -> String {
    for (prefix, ns) in [("rdf:", RDF), ("rdfs:", RDFS), ("owl:", OWL)] {
        if let Some(local) = iri.strip_prefix(ns) {
            return format!("{prefix}{local}");
        }
    }
    iri.to_string()
}

/// Ids of the vocabulary terms the classifier and the rule kernels need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocab {
    pub rdf_type: TermId,
    pub sub_class_of: TermId,
    pub sub_property_of: TermId,
    pub domain: TermId,
    pub range: TermId,
    pub same_as: TermId,
    pub equivalent_class: TermId,
    pub equivalent_property: TermId,
    pub inverse_of: TermId,
    pub has_value: TermId,
    pub on_property: TermId,
    pub some_values_from: TermId,
    pub all_values_from: TermId,
    pub functional_property: TermId,
    pub inverse_functional_property: TermId,
    pub symmetric_property: TermId,
    pub transitive_property: TermId,
    pub owl_class: TermId,
    pub owl_property: TermId,
    schema_predicates: Vec<TermId>,
    schema_type_objects: Vec<TermId>,
}

impl Vocab {
    /// Interns every vocabulary IRI into `dict`.
    pub fn intern(dict: &mut Dictionary) -> Self {
        let mut id = |s: &str| dict.intern(Term::Iri(s.to_string()));
        let schema_predicates = SCHEMA_PREDICATES.iter().map(|s| id(s)).collect();
        let schema_type_objects = SCHEMA_TYPE_OBJECTS.iter().map(|s| id(s)).collect();
        Vocab {
            rdf_type: id(RDF_TYPE),
            sub_class_of: id(RDFS_SUB_CLASS_OF),
            sub_property_of: id(RDFS_SUB_PROPERTY_OF),
            domain: id(RDFS_DOMAIN),
            range: id(RDFS_RANGE),
            same_as: id(OWL_SAME_AS),
            equivalent_class: id(OWL_EQUIVALENT_CLASS),
            equivalent_property: id(OWL_EQUIVALENT_PROPERTY),
            inverse_of: id(OWL_INVERSE_OF),
            has_value: id(OWL_HAS_VALUE),
            on_property: id(OWL_ON_PROPERTY),
            some_values_from: id(OWL_SOME_VALUES_FROM),
            all_values_from: id(OWL_ALL_VALUES_FROM),
            functional_property: id(OWL_FUNCTIONAL_PROPERTY),
            inverse_functional_property: id(OWL_INVERSE_FUNCTIONAL_PROPERTY),
            symmetric_property: id(OWL_SYMMETRIC_PROPERTY),
            transitive_property: id(OWL_TRANSITIVE_PROPERTY),
            owl_class: id(OWL_CLASS),
            owl_property: id(OWL_PROPERTY),
            schema_predicates,
            schema_type_objects,
        }
    }

    pub fn is_schema_predicate(&self, p: TermId) -> bool {
        self.schema_predicates.contains(&p)
    }

    pub fn is_schema_type_object(&self, o: TermId) -> bool {
        self.schema_type_objects.contains(&o)
    }

    pub fn schema_predicates(&self) -> &[TermId] {
        &self.schema_predicates
    }

    pub fn schema_type_objects(&self) -> &[TermId] {
        &self.schema_type_objects
    }
}
