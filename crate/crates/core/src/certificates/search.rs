//! Best-effort breadth-first search for commutator certificates.
//!
//! Candidates are conjugates g r^{±1} g⁻¹ with g a subword of the target (or its inverse)
//! and r drawn from the presentation; balanced relator products found this way are folded.

use super::{check_abelianization, fold_pairs, CommutatorProduct, Presentation, Relator, RelatorFactor, RelatorProduct};
use crate::error::Result;
use crate::exactfield::{fe_eq, FieldElem};
use crate::steinberg::RelatorInstance;
use crate::words::{Generator, Root, Word};
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: Option<CommutatorProduct>,
    pub explored: usize,
    pub budget_exhausted: bool,
}

struct Candidate {
    factor: RelatorFactor,
    word: Word,
    key: String,
}

fn params(target: &Word) -> Vec<FieldElem> {
    let mut out: Vec<FieldElem> = Vec::new();
    for l in target.letters() {
        if let Generator::Stein { t, .. } = &l.gen {
            for c in [t.clone(), t.neg()] {
                if !out.iter().any(|o| fe_eq(o, &c)) {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn relators(pres: &Presentation, target: &Word) -> Vec<Relator> {
    match pres {
        Presentation::Finite { relators, .. } => {
            relators.iter().map(|(n, w)| Relator::Named { name: n.clone(), word: w.clone() }).collect()
        }
        Presentation::Steinberg => {
            let ps = params(target);
            let mut out = Vec::new();
            for alpha in [Root::Pos, Root::Neg] {
                for p in &ps {
                    for q in &ps {
                        out.push(Relator::Stein(RelatorInstance::r1(alpha, p.clone(), q.clone())));
                        if !p.is_zero() {
                            out.push(Relator::Stein(RelatorInstance::r2(alpha, p.clone(), q.clone())));
                        }
                    }
                }
            }
            out
        }
    }
}

fn conjugators(target: &Word, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for w in [target.clone(), target.inv()] {
        let ls2 = w.letters();
        for i in 0..ls2.len() {
            for j in i + 1..=(i + max_len).min(ls2.len()) {
                let s = w.slice(i, j);
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn total_len(p: &RelatorProduct) -> usize {
    p.factors.iter().map(|f| f.conjugator.len()).sum()
}

fn order_key(p: &RelatorProduct) -> (usize, Vec<String>) {
    let ser = p.factors.iter().map(|f| format!("{}|{}|{}", f.conjugator, f.relator, f.sign)).collect();
    (total_len(p), ser)
}

/// Deterministic: ties are broken by total conjugator length, then by serialization.
pub fn search_commutator_cert(
    target: &Word,
    pres: &Presentation,
    max_cost: usize,
    max_word_len: usize,
    budget: usize,
) -> Result<SearchOutcome> {
    check_abelianization(target)?;
    pres.check_alphabet(target)?;
    if target.is_empty() {
        return Ok(SearchOutcome { certificate: Some(CommutatorProduct::empty()), explored: 0, budget_exhausted: false });
    }
    let mut cands = Vec::new();
    for g in conjugators(target, max_word_len) {
        for r in relators(pres, target) {
            for sign in [1i8, -1] {
                let factor = RelatorFactor { conjugator: g.clone(), relator: r.clone(), sign };
                let word = factor.expand()?;
                let key = word.to_string();
                cands.push(Candidate { factor, word, key });
            }
        }
    }
    let mut index: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, c) in cands.iter().enumerate() {
        index.entry(c.key.as_str()).or_default().push(i);
    }

    let mut explored = 0usize;
    let mut exhausted = false;
    for cost in 1..=max_cost {
        let len = 2 * cost;
        // prefixes of length len−1, enumerated lexicographically over candidate indices
        let n = cands.len();
        let prefixes: usize = n.checked_pow((len - 1) as u32).unwrap_or(usize::MAX);
        let take = prefixes.min(budget.saturating_sub(explored));
        if take < prefixes {
            exhausted = true;
        }
        let found: Vec<RelatorProduct> = (0..take)
            .into_par_iter()
            .filter_map(|code| {
                let mut idx = Vec::with_capacity(len);
                let mut c = code;
                for _ in 0..len - 1 {
                    idx.push(c % n);
                    c /= n;
                }
                let mut acc = Word::empty();
                for &i in &idx {
                    acc = acc.mul(&cands[i].word);
                }
                let need = acc.inv().mul(target).to_string();
                let hits = index.get(need.as_str())?;
                let mut best: Option<RelatorProduct> = None;
                for &last in hits {
                    let mut factors: Vec<RelatorFactor> = idx.iter().map(|&i| cands[i].factor.clone()).collect();
                    factors.push(cands[last].factor.clone());
                    let p = RelatorProduct { target: target.clone(), factors };
                    if fold_pairs(&p, true).is_ok() && best.as_ref().map_or(true, |b| order_key(&p) < order_key(b)) {
                        best = Some(p);
                    }
                }
                best
            })
            .collect();
        explored += take;
        let best = found.into_iter().min_by_key(order_key);
        if let Some(p) = best {
            let c = fold_pairs(&p, true)?;
            return Ok(SearchOutcome { certificate: Some(c), explored, budget_exhausted: exhausted });
        }
        if exhausted {
            break;
        }
    }
    Ok(SearchOutcome { certificate: None, explored, budget_exhausted: exhausted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{torus_knot, verify_commutator_product};
    use crate::error::Error;
    use crate::exactfield::FieldCtx;

    #[test]
    fn finds_torus_certificate() {
        let tk = torus_knot(2, 3).unwrap();
        let target = tk.m.comm(&tk.l);
        let out = search_commutator_cert(&target, &tk.presentation, 1, 12, 1_000_000).unwrap();
        let c = out.certificate.expect("found");
        assert_eq!(c.cost(), 1);
        assert!(verify_commutator_product(&tk.presentation, &c).unwrap().ok);
    }

    #[test]
    fn trivial_and_precondition() {
        let out = search_commutator_cert(&Word::empty(), &Presentation::Steinberg, 2, 2, 10).unwrap();
        assert_eq!(out.certificate.unwrap().cost(), 0);
        let ctx = FieldCtx::new(&["s", "t"]);
        let r = RelatorInstance::r1(Root::Pos, ctx.var("s"), ctx.var("t")).expand().unwrap();
        assert!(matches!(
            search_commutator_cert(&r, &Presentation::Steinberg, 2, 2, 10),
            Err(Error::AbelianizationNonzero(_))
        ));
    }
}
