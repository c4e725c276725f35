use crate::model::{Dictionary, TermId, Triple};
use crate::rules::{PatternTerm, Rule, RuleId, TriplePattern};

pub(crate) const MAX_VARS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Slot {
    Var(usize),
    Const(TermId),
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Atom {
    pub slots: [Slot; 3],
    /// Also matches `(t owl:sameAs t)` for every term `t`.
    pub reflexive_same_as: bool,
}

pub(crate) type Binding = [Option<TermId>; MAX_VARS];

/// A rule with constants resolved to ids and variables numbered.
#[derive(Debug, Clone)]
pub(crate) struct CompiledRule {
    pub conditions: Vec<Atom>,
    pub consequences: Vec<[Slot; 3]>,
    pub distinct: Vec<(usize, usize)>,
}

impl CompiledRule {
    pub fn compile(rule: &Rule, dict: &Dictionary, same_as: TermId) -> Self {
        let mut names: Vec<String> = Vec::new();
        let mut conditions = Vec::new();
        for c in &rule.conditions {
            let s = pattern_slots(rule, c, dict, &mut names);
            conditions.push(Atom {
                slots: s,
                reflexive_same_as: rule.id == RuleId::O10 && s[1] == Slot::Const(same_as),
            });
        }
        let consequences = rule
            .consequences
            .iter()
            .map(|c| pattern_slots(rule, c, dict, &mut names))
            .collect();
        let var = |n: &str| names.iter().position(|x| x == n).expect("distinct var bound");
        let distinct = rule.distinct.iter().map(|(a, b)| (var(a), var(b))).collect();
        CompiledRule {
            conditions,
            consequences,
            distinct,
        }
    }
}

fn pattern_slots(
    rule: &Rule,
    p: &TriplePattern,
    dict: &Dictionary,
    names: &mut Vec<String>,
) -> [Slot; 3] {
    let mut slot = |t: &PatternTerm| match t {
        PatternTerm::Var(v) => {
            let i = names.iter().position(|n| n == v).unwrap_or_else(|| {
                names.push(v.clone());
                names.len() - 1
            });
            assert!(i < MAX_VARS, "rule {} has too many variables", rule.id);
            Slot::Var(i)
        }
        PatternTerm::Const(term) => Slot::Const(
            dict.lookup(term)
                .unwrap_or_else(|| panic!("vocabulary term {term} not interned")),
        ),
    };
    [slot(&p.s), slot(&p.p), slot(&p.o)]
}

#[inline]
pub(crate) fn resolve(slot: Slot, b: &Binding) -> Option<TermId> {
    match slot {
        Slot::Const(c) => Some(c),
        Slot::Var(i) => b[i],
    }
}

/// Extends `b` so that `atom` matches `t`.
#[inline]
pub(crate) fn unify(atom: &Atom, t: &Triple, b: &Binding) -> Option<Binding> {
    let mut out = *b;
    for (slot, val) in atom.slots.iter().zip([t.s, t.p, t.o]) {
        match *slot {
            Slot::Const(c) if c != val => return None,
            Slot::Const(_) => {}
            Slot::Var(i) => match out[i] {
                Some(x) if x != val => return None,
                Some(_) => {}
                None => out[i] = Some(val),
            },
        }
    }
    Some(out)
}

pub(crate) fn instantiate(slots: &[Slot; 3], b: &Binding) -> Triple {
    let v = |s: Slot| resolve(s, b).expect("range-restricted rule binds every consequence var");
    Triple::new(v(slots[0]), v(slots[1]), v(slots[2]))
}
