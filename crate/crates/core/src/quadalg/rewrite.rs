use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::exactq::{format_rational, Echelon, Rational};

use super::{fmt_lincomb, LinComb, MonomialOrder, QuadraticAlgebra, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    /// Every word is strictly smaller than `lhs`.
    pub rhs: LinComb,
}

/// Which reducible length-2 factor is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Oriented relations of a quadratic algebra. Immutable once derived.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    generators: Vec<String>,
    order: MonomialOrder,
    rules: Vec<RewriteRule>,
    by_lhs: HashMap<(usize, usize), usize>,
    confluent: OnceLock<bool>,
}

/// Solves every relation for its largest word: the relation matrix is brought
/// to rref with columns sorted from the largest word down, so pivots are the
/// leading words and right-hand sides only involve normal words.
pub fn derive_rewrite_system(a: &QuadraticAlgebra, o: &MonomialOrder) -> RewriteSystem {
    let g = a.num_generators();
    assert_eq!(o.num_generators(), g, "order and algebra disagree on generators");
    let mut words: Vec<Word> = (0..g * g).map(|c| a.word_of_col(c)).collect();
    words.sort_by(|x, y| o.compare(y, x));
    let mut pos = vec![0; g * g];
    for (p, w) in words.iter().enumerate() {
        pos[w[0] * g + w[1]] = p;
    }
    let mut ech = Echelon::new(g * g);
    for row in a.relations().rows() {
        let mut v: Vec<(usize, Rational)> = row.iter().map(|(c, x)| (pos[*c], x.clone())).collect();
        v.sort_by_key(|e| e.0);
        ech.insert(&v);
    }
    let (rows, _) = ech.into_rref();
    let rules = rows
        .into_iter()
        .map(|r| RewriteRule {
            lhs: words[r[0].0].clone(),
            rhs: r[1..].iter().map(|(c, x)| (words[*c].clone(), -x.clone())).collect(),
        })
        .collect();
    RewriteSystem::new(a.generators().to_vec(), o.clone(), rules)
}

impl RewriteSystem {
    fn new(generators: Vec<String>, order: MonomialOrder, mut rules: Vec<RewriteRule>) -> Self {
        rules.sort_by(|x, y| order.compare(&y.lhs, &x.lhs));
        let by_lhs = rules
            .iter()
            .enumerate()
            .map(|(i, r)| ((r.lhs[0], r.lhs[1]), i))
            .collect();
        Self {
            generators,
            order,
            rules,
            by_lhs,
            confluent: OnceLock::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Rules sorted by decreasing left-hand side.
    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn is_lhs(&self, a: usize, b: usize) -> bool {
        self.by_lhs.contains_key(&(a, b))
    }

    pub fn rule_for(&self, a: usize, b: usize) -> Option<&RewriteRule> {
        self.by_lhs.get(&(a, b)).map(|&i| &self.rules[i])
    }

    /// Cached result of [`check_confluence`].
    pub fn is_confluent(&self) -> bool {
        *self.confluent.get_or_init(|| check_confluence(self).confluent)
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        w.iter().map(|&i| self.generators[i].as_str()).collect::<Vec<_>>().join("·")
    }

    pub fn format_lincomb(&self, lc: &LinComb) -> String {
        fmt_lincomb(lc, |w| self.format_word(w))
    }

    fn reducible_at(&self, w: &[usize], strategy: Strategy) -> Option<usize> {
        let mut positions = 0..w.len().saturating_sub(1);
        let hit = |&p: &usize| self.is_lhs(w[p], w[p + 1]);
        match strategy {
            Strategy::Leftmost => positions.find(hit),
            Strategy::Rightmost => positions.rev().find(hit),
        }
    }

    /// One rewriting step on the factor starting at `pos`.
    pub fn rewrite_at(&self, w: &[usize], pos: usize) -> LinComb {
        let rule = self.rule_for(w[pos], w[pos + 1]).expect("reducible factor");
        rule.rhs
            .iter()
            .map(|(r, c)| {
                let mut out = Vec::with_capacity(w.len());
                out.extend_from_slice(&w[..pos]);
                out.extend_from_slice(r);
                out.extend_from_slice(&w[pos + 2..]);
                (out, c.clone())
            })
            .collect()
    }

    /// Exhaustive rewriting of `lc`. Words are processed from the largest
    /// down; each step replaces one word by strictly smaller ones. When
    /// `trace` is given, the current combination is pushed after every step.
    pub fn reduce(&self, lc: &LinComb, strategy: Strategy, mut trace: Option<&mut Vec<LinComb>>) -> LinComb {
        let mut work: BTreeMap<(usize, Vec<usize>), Rational> = BTreeMap::new();
        let mut done = LinComb::new();
        let key = |w: &[usize]| (w.len(), self.order.key(w));
        for (w, c) in lc {
            add_into(&mut work, key(w), c.clone());
        }
        while let Some(((_, k), c)) = work.pop_last() {
            let w = self.order.unkey(&k);
            match self.reducible_at(&w, strategy) {
                None => {
                    done.insert(w, c);
                }
                Some(p) => {
                    for (v, d) in self.rewrite_at(&w, p) {
                        add_into(&mut work, key(&v), c.clone() * d);
                    }
                    if let Some(t) = trace.as_deref_mut() {
                        let mut snapshot = done.clone();
                        for ((_, k), c) in &work {
                            snapshot.insert(self.order.unkey(k), c.clone());
                        }
                        t.push(snapshot);
                    }
                }
            }
        }
        done
    }

    /// Leftmost-first normal form of a single word.
    pub fn normal_form(&self, w: &[usize]) -> LinComb {
        let lc = LinComb::from([(w.to_vec(), Rational::from_integer(1.into()))]);
        self.reduce(&lc, Strategy::Leftmost, None)
    }

    pub fn rules_json(&self) -> Value {
        Value::Array(
            self.rules
                .iter()
                .map(|r| {
                    json!({
                        "lhs": self.names(&r.lhs),
                        "rhs": lincomb_json(self, &r.rhs),
                        "text": format!("{} -> {}", self.format_word(&r.lhs), self.format_lincomb(&r.rhs)),
                    })
                })
                .collect(),
        )
    }

    pub fn names(&self, w: &[usize]) -> Vec<String> {
        w.iter().map(|&i| self.generators[i].clone()).collect()
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, k: K, c: Rational) {
    let e = map.entry(k);
    match e {
        std::collections::btree_map::Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn lincomb_json(rs: &RewriteSystem, lc: &LinComb) -> Value {
    Value::Array(
        lc.iter()
            .map(|(w, c)| json!({"word": rs.names(w), "coeff": format_rational(c)}))
            .collect(),
    )
}

/// Words `uvw` with both `uv` and `vw` left-hand sides.
pub fn critical_monomials(rs: &RewriteSystem) -> Vec<Word> {
    let mut out = Vec::new();
    for r in &rs.rules {
        for s in &rs.rules {
            if r.lhs[1] == s.lhs[0] {
                out.push(vec![r.lhs[0], r.lhs[1], s.lhs[1]]);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceFailure {
    pub monomial: Word,
    /// Distinct normal forms reached by the different reduction paths.
    pub normal_forms: Vec<LinComb>,
    /// Reduction starting with the left overlap rule, then leftmost-first.
    pub left_trace: Vec<LinComb>,
    /// Reduction starting with the right overlap rule, then leftmost-first.
    pub right_trace: Vec<LinComb>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub confluent: bool,
    pub critical_count: usize,
    pub failures: Vec<ConfluenceFailure>,
}

impl ConfluenceReport {
    pub fn to_json(&self, rs: &RewriteSystem) -> Value {
        let trace = |m: &Word, t: &[LinComb]| {
            let mut steps = vec![rs.format_word(m)];
            steps.extend(t.iter().map(|lc| rs.format_lincomb(lc)));
            steps.join(" ~> ")
        };
        json!({
            "confluent": self.confluent,
            "critical_count": self.critical_count,
            "failures": self.failures.iter().map(|f| json!({
                "monomial": rs.names(&f.monomial),
                "normal_forms": f.normal_forms.iter().map(|lc| lincomb_json(rs, lc)).collect::<Vec<_>>(),
                "left_trace": trace(&f.monomial, &f.left_trace),
                "right_trace": trace(&f.monomial, &f.right_trace),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Reduces every critical monomial along both overlaps with both strategies,
/// and by plain normal form; the system is confluent when all agree.
pub fn check_confluence(rs: &RewriteSystem) -> ConfluenceReport {
    let crit = critical_monomials(rs);
    let outcomes = crate::par::map(&crit, |m| {
        let left = rs.rewrite_at(m, 0);
        let right = rs.rewrite_at(m, 1);
        let mut forms = BTreeSet::new();
        for start in [&left, &right] {
            for s in [Strategy::Leftmost, Strategy::Rightmost] {
                forms.insert(rs.reduce(start, s, None));
            }
        }
        forms.insert(rs.normal_form(m));
        if forms.len() == 1 {
            return None;
        }
        let mut left_trace = vec![left.clone()];
        let mut right_trace = vec![right.clone()];
        rs.reduce(&left, Strategy::Leftmost, Some(&mut left_trace));
        rs.reduce(&right, Strategy::Leftmost, Some(&mut right_trace));
        Some(ConfluenceFailure {
            monomial: m.clone(),
            normal_forms: forms.into_iter().collect(),
            left_trace,
            right_trace,
        })
    });
    let failures: Vec<ConfluenceFailure> = outcomes.into_iter().flatten().collect();
    ConfluenceReport {
        confluent: failures.is_empty(),
        critical_count: crit.len(),
        failures,
    }
}
