//! Synthetic university-domain datasets.
//!
//! The schema is a fixed LUBM-style ontology extended with the axioms the
//! rule set needs (inverse, transitive, symmetric and functional properties,
//! equivalences and hasValue/someValuesFrom/allValuesFrom restrictions).
//! Instance data is produced entity by entity: every entity contributes one
//! type triple and a handful of property triples, which puts type triples at
//! roughly a fifth of the instance data.

use std::collections::{HashSet, VecDeque};
use std::io::{self, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::vocab::{self, OWL};
use crate::model::{Dictionary, Term, Triple, TripleStore};

pub const UB: &str = "http://swat.cse.lehigh.edu/onto/univ-bench.owl#";

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    /// Exact number of triples emitted, schema included.
    pub triples: usize,
    pub seed: u64,
    /// Probability that an instance slot holds an owl:sameAs alias link.
    pub same_as_rate: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            triples: 10_000,
            seed: 42,
            same_as_rate: 0.0,
        }
    }
}

pub type TermTriple = (Term, Term, Term);

fn ub(local: &str) -> Term {
    Term::Iri(format!("{UB}{local}"))
}

fn owl(local: &str) -> Term {
    Term::Iri(format!("{OWL}{local}"))
}

/// Expands `prefix:local` for rdf/rdfs/owl, otherwise treats the token as a
/// local name in the ontology namespace.
fn term(token: &str) -> Term {
    if token.contains(':') {
        Term::Iri(vocab::expand(token))
    } else {
        ub(token)
    }
}

const SCHEMA: &[(&str, &str, &str)] = &[
    ("Organization", "rdf:type", "owl:Class"),
    ("University", "rdfs:subClassOf", "Organization"),
    ("Department", "rdfs:subClassOf", "Organization"),
    ("ResearchGroup", "rdfs:subClassOf", "Organization"),
    ("Person", "rdf:type", "owl:Class"),
    ("Employee", "rdfs:subClassOf", "Person"),
    ("Faculty", "rdfs:subClassOf", "Employee"),
    ("Professor", "rdfs:subClassOf", "Faculty"),
    ("FullProfessor", "rdfs:subClassOf", "Professor"),
    ("AssociateProfessor", "rdfs:subClassOf", "Professor"),
    ("AssistantProfessor", "rdfs:subClassOf", "Professor"),
    ("Lecturer", "rdfs:subClassOf", "Faculty"),
    ("Chair", "rdfs:subClassOf", "Professor"),
    ("Student", "rdfs:subClassOf", "Person"),
    ("UndergraduateStudent", "rdfs:subClassOf", "Student"),
    ("GraduateStudent", "rdfs:subClassOf", "Person"),
    ("Work", "rdf:type", "owl:Class"),
    ("Course", "rdfs:subClassOf", "Work"),
    ("GraduateCourse", "rdfs:subClassOf", "Course"),
    ("Publication", "rdfs:subClassOf", "Work"),
    ("Article", "rdfs:subClassOf", "Publication"),
    ("Scholar", "owl:equivalentClass", "Person"),
    // restrictions
    ("TakesSomeCourse", "owl:onProperty", "takesCourse"),
    ("TakesSomeCourse", "owl:someValuesFrom", "Course"),
    ("Student", "owl:equivalentClass", "TakesSomeCourse"),
    ("HeadOfSomeDepartment", "owl:onProperty", "headOf"),
    ("HeadOfSomeDepartment", "owl:someValuesFrom", "Department"),
    ("Chair", "owl:equivalentClass", "HeadOfSomeDepartment"),
    ("AdvisedByProfessors", "owl:onProperty", "advisor"),
    ("AdvisedByProfessors", "owl:allValuesFrom", "Professor"),
    ("GraduateStudent", "rdfs:subClassOf", "AdvisedByProfessors"),
    ("University0Alumnus", "owl:onProperty", "degreeFrom"),
    ("University0Alumnus", "owl:hasValue", "@University0"),
    // properties
    ("headOf", "rdfs:subPropertyOf", "worksFor"),
    ("worksFor", "rdfs:subPropertyOf", "memberOf"),
    ("doctoralDegreeFrom", "rdfs:subPropertyOf", "degreeFrom"),
    ("mastersDegreeFrom", "rdfs:subPropertyOf", "degreeFrom"),
    ("undergraduateDegreeFrom", "rdfs:subPropertyOf", "degreeFrom"),
    ("hasAlumnus", "owl:inverseOf", "degreeFrom"),
    ("member", "owl:inverseOf", "memberOf"),
    ("subOrganizationOf", "rdf:type", "owl:TransitiveProperty"),
    ("collaboratesWith", "rdf:type", "owl:SymmetricProperty"),
    ("advisor", "rdf:type", "owl:FunctionalProperty"),
    ("emailAddress", "rdf:type", "owl:InverseFunctionalProperty"),
    ("enrolledIn", "owl:equivalentProperty", "takesCourse"),
    ("takesCourse", "rdfs:domain", "Student"),
    ("takesCourse", "rdfs:range", "Course"),
    ("teacherOf", "rdfs:domain", "Faculty"),
    ("teacherOf", "rdfs:range", "Course"),
    ("advisor", "rdfs:range", "Professor"),
    ("worksFor", "rdfs:range", "Organization"),
    ("memberOf", "rdfs:domain", "Person"),
    ("headOf", "rdfs:range", "Department"),
    ("publicationAuthor", "rdfs:domain", "Publication"),
    ("publicationAuthor", "rdfs:range", "Person"),
    ("degreeFrom", "rdfs:range", "University"),
    ("subOrganizationOf", "rdfs:domain", "Organization"),
];

/// The fixed ontology, without instance data.
pub fn schema() -> Vec<TermTriple> {
    SCHEMA
        .iter()
        .map(|&(s, p, o)| {
            let object = match o.strip_prefix('@') {
                Some(name) => Term::Iri(entity_iri(0, name)),
                None => term(o),
            };
            (term(s), term(p), object)
        })
        .collect()
}

fn entity_iri(university: usize, local: &str) -> String {
    format!("http://www.University{university}.edu/{local}")
}

struct Builder {
    rng: ChaCha8Rng,
    queue: VecDeque<TermTriple>,
    university: usize,
    departments: Vec<Term>,
    professors: Vec<Term>,
    courses: Vec<Term>,
    people: Vec<Term>,
    counter: usize,
}

impl Builder {
    fn entity(&mut self, kind: &str) -> Term {
        self.counter += 1;
        Term::Iri(entity_iri(
            self.university,
            &format!("{kind}{}", self.counter),
        ))
    }

    fn push(&mut self, s: &Term, p: &str, o: Term) {
        self.queue.push_back((s.clone(), term(p), o));
    }

    fn name(&mut self, s: &Term, label: &str) {
        self.push(s, "name", Term::literal(label));
    }

    fn telephone(&mut self, s: &Term) {
        let number: u32 = self.rng.gen_range(1_000_000..10_000_000);
        self.push(s, "telephone", Term::literal(format!("555-{number}")));
    }

    fn university_iri(&self, n: usize) -> Term {
        Term::Iri(entity_iri(n, "University"))
    }

    fn pick(&mut self, pool: PoolKind) -> Option<Term> {
        let v = match pool {
            PoolKind::Department => &self.departments,
            PoolKind::Professor => &self.professors,
            PoolKind::Course => &self.courses,
            PoolKind::Person => &self.people,
        };
        v.choose(&mut self.rng).cloned()
    }

    fn random_university(&mut self) -> Term {
        let n = self.rng.gen_range(0..=self.university + 2);
        self.university_iri(n)
    }

    fn new_university(&mut self) {
        self.university += 1;
        self.counter = 0;
        self.departments.clear();
        self.professors.clear();
        self.courses.clear();
        self.people.clear();
        let u = self.university_iri(self.university);
        self.push(&u, "rdf:type", ub("University"));
        self.name(&u, &format!("University{}", self.university));
    }

    fn department(&mut self) {
        let d = self.entity("Department");
        self.push(&d, "rdf:type", ub("Department"));
        let u = self.university_iri(self.university);
        self.push(&d, "subOrganizationOf", u);
        self.name(&d, "Department");
        if self.rng.gen_bool(0.5) {
            let g = self.entity("ResearchGroup");
            self.push(&g, "rdf:type", ub("ResearchGroup"));
            self.push(&g, "subOrganizationOf", d.clone());
        }
        self.departments.push(d);
    }

    fn course(&mut self) {
        let graduate = self.rng.gen_bool(0.3);
        let c = self.entity(if graduate { "GraduateCourse" } else { "Course" });
        self.push(&c, "rdf:type", ub(if graduate { "GraduateCourse" } else { "Course" }));
        self.name(&c, "Course");
        self.courses.push(c);
    }

    fn professor(&mut self) {
        let kinds = ["FullProfessor", "AssociateProfessor", "AssistantProfessor"];
        let kind = *kinds.choose(&mut self.rng).expect("non-empty");
        let p = self.entity(kind);
        self.push(&p, "rdf:type", ub(kind));
        let dept = self.pick(PoolKind::Department).expect("department exists");
        if kind == "FullProfessor" && self.rng.gen_bool(0.2) {
            self.push(&p, "headOf", dept);
        } else {
            self.push(&p, "worksFor", dept);
        }
        self.name(&p, kind);
        self.telephone(&p);
        let email = Term::literal(format!("{}@University{}.edu", self.counter, self.university));
        self.push(&p, "emailAddress", email);
        let univ = self.random_university();
        self.push(&p, "doctoralDegreeFrom", univ);
        if let Some(c) = self.pick(PoolKind::Course) {
            self.push(&p, "teacherOf", c);
        }
        if let Some(other) = self.pick(PoolKind::Professor) {
            if self.rng.gen_bool(0.3) {
                self.push(&p, "collaboratesWith", other);
            }
        }
        self.professors.push(p.clone());
        self.people.push(p);
    }

    fn undergraduate(&mut self) {
        let s = self.entity("UndergraduateStudent");
        self.push(&s, "rdf:type", ub("UndergraduateStudent"));
        let dept = self.pick(PoolKind::Department).expect("department exists");
        self.push(&s, "memberOf", dept);
        self.name(&s, "UndergraduateStudent");
        self.telephone(&s);
        for _ in 0..self.rng.gen_range(1..=3) {
            if let Some(c) = self.pick(PoolKind::Course) {
                self.push(&s, "takesCourse", c);
            }
        }
        self.people.push(s);
    }

    fn graduate(&mut self) {
        let s = self.entity("GraduateStudent");
        self.push(&s, "rdf:type", ub("GraduateStudent"));
        let dept = self.pick(PoolKind::Department).expect("department exists");
        self.push(&s, "memberOf", dept);
        self.name(&s, "GraduateStudent");
        self.telephone(&s);
        if let Some(c) = self.pick(PoolKind::Course) {
            self.push(&s, "takesCourse", c);
        }
        if let Some(p) = self.pick(PoolKind::Professor) {
            self.push(&s, "advisor", p);
        }
        let univ = self.random_university();
        self.push(&s, "undergraduateDegreeFrom", univ);
        self.people.push(s);
    }

    fn alumnus(&mut self) {
        let a = self.entity("Alumnus");
        self.push(&a, "rdf:type", ub("University0Alumnus"));
        self.name(&a, "Alumnus");
        self.people.push(a);
    }

    fn publication(&mut self) {
        let p = self.entity("Publication");
        self.push(&p, "rdf:type", ub("Article"));
        self.name(&p, "Publication");
        for _ in 0..self.rng.gen_range(1..=2) {
            if let Some(a) = self.pick(PoolKind::Professor) {
                self.push(&p, "publicationAuthor", a);
            }
        }
    }

    /// Queues the next batch of entity triples.
    fn refill(&mut self) {
        if self.departments.is_empty() || self.rng.gen_bool(0.002) {
            if self.departments.len() >= 15 || self.university == 0 {
                self.new_university();
            }
            self.department();
            for _ in 0..4 {
                self.course();
            }
            self.professor();
            return;
        }
        match self.rng.gen_range(0..100) {
            0..=4 => self.department(),
            5..=19 => self.course(),
            20..=29 => self.professor(),
            30..=64 => self.undergraduate(),
            65..=79 => self.graduate(),
            80..=81 => self.alumnus(),
            _ => self.publication(),
        }
    }

    fn alias(&mut self, n: usize) -> TermTriple {
        let target = match self.pick(PoolKind::Person) {
            Some(p) => p,
            None => self.university_iri(self.university),
        };
        let alias = Term::Iri(format!("http://aliases.example.org/{n}"));
        (target, owl("sameAs"), alias)
    }
}

#[derive(Clone, Copy)]
enum PoolKind {
    Department,
    Professor,
    Course,
    Person,
}

/// Generates exactly `cfg.triples` distinct triples; the output depends on
/// the configuration only.
pub fn generate(cfg: &GeneratorConfig) -> Vec<TermTriple> {
    let mut out = schema();
    out.truncate(cfg.triples);
    let mut seen: HashSet<TermTriple> = out.iter().cloned().collect();
    let mut b = Builder {
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        queue: VecDeque::new(),
        university: 0,
        departments: Vec::new(),
        professors: Vec::new(),
        courses: Vec::new(),
        people: Vec::new(),
        counter: 0,
    };
    let rate = cfg.same_as_rate.clamp(0.0, 1.0);
    let mut aliases = 0;
    while out.len() < cfg.triples {
        if rate > 0.0 && b.rng.gen_bool(rate) {
            aliases += 1;
            let t = b.alias(aliases);
            seen.insert(t.clone());
            out.push(t);
            continue;
        }
        if b.queue.is_empty() {
            b.refill();
        }
        if let Some(t) = b.queue.pop_front() {
            if seen.insert(t.clone()) {
                out.push(t);
            }
        }
    }
    out
}

/// Interns generated triples into `store`.
pub fn load(triples: &[TermTriple], dict: &mut Dictionary, store: &mut TripleStore) -> usize {
    let encoded: Vec<Triple> = triples
        .iter()
        .map(|(s, p, o)| {
            Triple::new(
                dict.intern(s.clone()),
                dict.intern(p.clone()),
                dict.intern(o.clone()),
            )
        })
        .collect();
    store.insert(encoded)
}

/// Writes N-Triples in generation order.
pub fn write<W: Write>(triples: &[TermTriple], mut w: W) -> io::Result<()> {
    for (s, p, o) in triples {
        writeln!(w, "{s} {p} {o} .")?;
    }
    Ok(())
}

/// Convenience: dictionary and store holding a fresh dataset.
pub fn generate_store(cfg: &GeneratorConfig) -> (Dictionary, TripleStore) {
    let mut dict = Dictionary::new();
    let mut store = TripleStore::new(&mut dict);
    load(&generate(cfg), &mut dict, &mut store);
    (dict, store)
}
