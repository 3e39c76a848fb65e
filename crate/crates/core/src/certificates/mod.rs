//! Verifiable witnesses for relator length and commutator length relative to R.
//!
//! A [`RelatorProduct`] witnesses membership in the normal closure R; a
//! [`CommutatorProduct`] witnesses membership in [F,R]. Both carry their target
//! and are checked by free reduction only.

mod bounds;
mod builder;
mod congruence;
mod format;
pub mod lemmas;
pub mod mutate;
mod psi;
mod refined;
mod search;
mod torus;
mod transform;
mod translations;

pub use bounds::{affine_unit_argument, t2_bound, AffineOutcome, BoundReport, Provenance};
pub use builder::{hall_witt_cert, hall_witt_word, hall_witt_word_right, lift_left, lift_right, xi, XiBuilder};
pub use congruence::Congruence;
pub use format::{from_json, to_json, Certificate, CertificateDoc, FORMAT_NAME, FORMAT_VERSION};
pub use psi::{psi_r1_cert, psi_r2_cert, psi_transport, PsiCerts};
pub use refined::{ghys_refined, GhysRefined, IdentityCheck, LedgerEntry};
pub use search::{search_commutator_cert, SearchOutcome};
pub use torus::{torus_knot, TorusKnot};
pub use transform::{compose_products, fold_pairs, lift_adjust, surface_datum, SurfaceDatum};
pub use translations::{r3_pair_cert, translation_cert, translation_pair, TranslationMode};

use crate::error::{Error, Result};
use crate::steinberg::{RelatorInstance, Schema};
use crate::words::{Generator, Word};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Presentation {
    Finite { name: String, generators: Vec<String>, relators: Vec<(String, Word)> },
    /// St₂(k) with defining relators R1, R2; R3 and R4 are admitted through derivations.
    Steinberg,
}

impl Presentation {
    pub fn name(&self) -> &str {
        match self {
            Presentation::Finite { name, .. } => name,
            Presentation::Steinberg => "steinberg",
        }
    }

    fn relator_word(&self, name: &str) -> Option<&Word> {
        match self {
            Presentation::Finite { relators, .. } => relators.iter().find(|(n, _)| n == name).map(|(_, w)| w),
            Presentation::Steinberg => None,
        }
    }

    pub fn check_alphabet(&self, w: &Word) -> Result<()> {
        for l in w.letters() {
            let ok = match (self, &l.gen) {
                (Presentation::Finite { generators, .. }, Generator::Named(n)) => generators.iter().any(|g| g.as_str() == &**n),
                (Presentation::Steinberg, Generator::Stein { .. }) => true,
                _ => false,
            };
            if !ok {
                return Err(Error::Invalid(format!("letter {} is outside the alphabet of `{}`", l, self.name())));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Relator {
    Named { name: String, word: Word },
    Stein(RelatorInstance),
}

impl PartialEq for Relator {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Relator::Named { name: a, .. }, Relator::Named { name: b, .. }) => a == b,
            (Relator::Stein(a), Relator::Stein(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relator::Named { name, .. } => write!(f, "{}", name),
            Relator::Stein(r) => write!(f, "{}", r),
        }
    }
}

impl Relator {
    pub fn expand(&self) -> Result<Word> {
        match self {
            Relator::Named { word, .. } => Ok(word.clone()),
            Relator::Stein(r) => r.expand(),
        }
    }
}

impl From<RelatorInstance> for Relator {
    fn from(r: RelatorInstance) -> Self {
        Relator::Stein(r)
    }
}

#[derive(Clone, Debug)]
pub struct RelatorFactor {
    pub conjugator: Word,
    pub relator: Relator,
    pub sign: i8,
}

impl RelatorFactor {
    pub fn expand(&self) -> Result<Word> {
        let r = self.relator.expand()?;
        let r = if self.sign < 0 { r.inv() } else { r };
        Ok(self.conjugator.conj(&r))
    }
}

/// A product of conjugates of relators with a stated target.
#[derive(Clone, Debug)]
pub struct RelatorProduct {
    pub target: Word,
    pub factors: Vec<RelatorFactor>,
}

impl RelatorProduct {
    pub fn empty() -> Self {
        RelatorProduct { target: Word::empty(), factors: Vec::new() }
    }

    pub fn single(relator: impl Into<Relator>, sign: i8) -> Result<Self> {
        let relator = relator.into();
        let f = RelatorFactor { conjugator: Word::empty(), relator, sign };
        Ok(RelatorProduct { target: f.expand()?, factors: vec![f] })
    }

    pub fn cost(&self) -> usize {
        self.factors.len()
    }

    pub fn mul(&self, o: &RelatorProduct) -> RelatorProduct {
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().cloned());
        RelatorProduct { target: self.target.mul(&o.target), factors }
    }

    pub fn inv(&self) -> RelatorProduct {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| RelatorFactor { conjugator: f.conjugator.clone(), relator: f.relator.clone(), sign: -f.sign })
            .collect();
        RelatorProduct { target: self.target.inv(), factors }
    }

    pub fn conj(&self, g: &Word) -> RelatorProduct {
        let factors = self
            .factors
            .iter()
            .map(|f| RelatorFactor { conjugator: g.mul(&f.conjugator), relator: f.relator.clone(), sign: f.sign })
            .collect();
        RelatorProduct { target: g.conj(&self.target), factors }
    }

    /// Product of the expanded factors, freely reduced.
    pub fn evaluate(&self) -> Result<Word> {
        let mut acc = Word::empty();
        for f in &self.factors {
            acc = acc.mul(&f.expand()?);
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
pub enum CommutatorFactor {
    /// [f, r]^sign with r = witness.target ∈ R.
    Commutator { f: Word, witness: RelatorProduct, sign: i8 },
    /// A block taken on trust from an external lemma: its target lies in [F,R]
    /// at the stated cost. The witness only records R-membership data.
    Imported { target: Word, witness: RelatorProduct, cost: usize, source: String },
}

impl CommutatorFactor {
    pub fn expand(&self) -> Word {
        match self {
            CommutatorFactor::Commutator { f, witness, sign } => {
                let c = f.comm(&witness.target);
                if *sign < 0 {
                    c.inv()
                } else {
                    c
                }
            }
            CommutatorFactor::Imported { target, .. } => target.clone(),
        }
    }

    pub fn cost(&self) -> usize {
        match self {
            CommutatorFactor::Commutator { .. } => 1,
            CommutatorFactor::Imported { cost, .. } => *cost,
        }
    }

    pub fn is_imported(&self) -> bool {
        matches!(self, CommutatorFactor::Imported { .. })
    }

    pub fn conj(&self, g: &Word) -> CommutatorFactor {
        match self {
            CommutatorFactor::Commutator { f, witness, sign } => {
                CommutatorFactor::Commutator { f: g.conj(f), witness: witness.conj(g), sign: *sign }
            }
            CommutatorFactor::Imported { target, witness, cost, source } => CommutatorFactor::Imported {
                target: g.conj(target),
                witness: witness.conj(g),
                cost: *cost,
                source: source.clone(),
            },
        }
    }

    pub fn inv(&self) -> CommutatorFactor {
        match self {
            CommutatorFactor::Commutator { f, witness, sign } => {
                CommutatorFactor::Commutator { f: f.clone(), witness: witness.clone(), sign: -sign }
            }
            CommutatorFactor::Imported { target, witness, cost, source } => CommutatorFactor::Imported {
                target: target.inv(),
                witness: witness.inv(),
                cost: *cost,
                source: source.clone(),
            },
        }
    }
}

/// A product of commutators [f_i, r_i]^{±1} with r_i ∈ R witnessed.
#[derive(Clone, Debug)]
pub struct CommutatorProduct {
    pub target: Word,
    pub factors: Vec<CommutatorFactor>,
}

impl CommutatorProduct {
    pub fn empty() -> Self {
        CommutatorProduct { target: Word::empty(), factors: Vec::new() }
    }

    pub fn from_factors(factors: Vec<CommutatorFactor>) -> Self {
        let mut target = Word::empty();
        for f in &factors {
            target = target.mul(&f.expand());
        }
        CommutatorProduct { target, factors }
    }

    pub fn single(f: CommutatorFactor) -> Self {
        Self::from_factors(vec![f])
    }

    pub fn cost(&self) -> usize {
        self.factors.iter().map(CommutatorFactor::cost).sum()
    }

    pub fn imported_cost(&self) -> usize {
        self.factors.iter().filter(|f| f.is_imported()).map(CommutatorFactor::cost).sum()
    }

    pub fn has_imports(&self) -> bool {
        self.factors.iter().any(CommutatorFactor::is_imported)
    }

    pub fn mul(&self, o: &CommutatorProduct) -> CommutatorProduct {
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().cloned());
        CommutatorProduct { target: self.target.mul(&o.target), factors }
    }

    pub fn inv(&self) -> CommutatorProduct {
        CommutatorProduct { target: self.target.inv(), factors: self.factors.iter().rev().map(|f| f.inv()).collect() }
    }

    pub fn conj(&self, g: &Word) -> CommutatorProduct {
        CommutatorProduct { target: g.conj(&self.target), factors: self.factors.iter().map(|f| f.conj(g)).collect() }
    }

    pub fn evaluate(&self) -> Word {
        let mut acc = Word::empty();
        for f in &self.factors {
            acc = acc.mul(&f.expand());
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub ok: bool,
    pub residual: Word,
    pub cost: usize,
    /// Human-readable reason for the first failure, if any.
    pub failure: Option<String>,
    /// Cost contributed by imported blocks.
    pub imported_cost: usize,
}

impl Verdict {
    fn pass(cost: usize, imported_cost: usize) -> Self {
        Verdict { ok: true, residual: Word::empty(), cost, failure: None, imported_cost }
    }

    fn fail(residual: Word, cost: usize, why: String) -> Self {
        Verdict { ok: false, residual, cost, failure: Some(why), imported_cost: 0 }
    }
}

/// Derived Steinberg relators that have already been checked against their derivation.
struct DerivedCache {
    ok: Vec<RelatorInstance>,
}

impl DerivedCache {
    fn check(&mut self, r: &RelatorInstance) -> Result<()> {
        if r.schema.is_primitive() || self.ok.iter().any(|o| o == r) {
            return Ok(());
        }
        let d = lemmas::derive(r)?;
        if d.factors.iter().any(|f| !matches!(&f.relator, Relator::Stein(i) if i.schema.is_primitive())) {
            return Err(Error::Internal(format!("derivation of {} leaves the defining relators", r)));
        }
        let got = d.evaluate()?;
        if got != r.expand()? {
            return Err(Error::Internal(format!("derivation of {} does not reduce to it", r)));
        }
        self.ok.push(r.clone());
        Ok(())
    }
}

fn check_relator(pres: &Presentation, rel: &Relator, cache: &mut DerivedCache) -> Result<()> {
    let unknown = || Error::UnknownRelator { presentation: pres.name().to_string(), relator: rel.to_string() };
    match (pres, rel) {
        (Presentation::Finite { .. }, Relator::Named { name, word }) => match pres.relator_word(name) {
            Some(w) if w == word => Ok(()),
            _ => Err(unknown()),
        },
        (Presentation::Steinberg, Relator::Stein(r)) => {
            r.check_units()?;
            cache.check(r)
        }
        _ => Err(unknown()),
    }
}

fn verify_rp(pres: &Presentation, p: &RelatorProduct, cache: &mut DerivedCache) -> Result<Verdict> {
    pres.check_alphabet(&p.target)?;
    let mut acc = Word::empty();
    for f in &p.factors {
        check_relator(pres, &f.relator, cache)?;
        pres.check_alphabet(&f.conjugator)?;
        if f.sign != 1 && f.sign != -1 {
            return Err(Error::Invalid(format!("factor sign {} is not ±1", f.sign)));
        }
        acc = acc.mul(&f.expand()?);
    }
    let residual = acc.mul(&p.target.inv());
    if residual.is_empty() {
        Ok(Verdict::pass(p.cost(), 0))
    } else {
        Ok(Verdict::fail(residual, p.cost(), "relator product does not reduce to its target".into()))
    }
}

pub fn verify_relator_product(pres: &Presentation, p: &RelatorProduct) -> Result<Verdict> {
    verify_rp(pres, p, &mut DerivedCache { ok: Vec::new() })
}

pub fn verify_commutator_product(pres: &Presentation, p: &CommutatorProduct) -> Result<Verdict> {
    let mut cache = DerivedCache { ok: Vec::new() };
    pres.check_alphabet(&p.target)?;
    let mut acc = Word::empty();
    let mut first_bad: Option<Verdict> = None;
    for (i, f) in p.factors.iter().enumerate() {
        let (w, word) = match f {
            CommutatorFactor::Commutator { f: g, witness, sign } => {
                pres.check_alphabet(g)?;
                if *sign != 1 && *sign != -1 {
                    return Err(Error::Invalid(format!("factor sign {} is not ±1", sign)));
                }
                (witness, f.expand())
            }
            CommutatorFactor::Imported { target, witness, .. } => {
                pres.check_alphabet(target)?;
                (witness, target.clone())
            }
        };
        let v = verify_rp(pres, w, &mut cache)?;
        if !v.ok && first_bad.is_none() {
            first_bad = Some(Verdict::fail(v.residual, p.cost(), format!("witness of factor {} does not verify", i)));
        }
        acc = acc.mul(&word);
    }
    let residual = acc.mul(&p.target.inv());
    if !residual.is_empty() {
        return Ok(Verdict::fail(residual, p.cost(), "commutator product does not reduce to its target".into()));
    }
    if let Some(bad) = first_bad {
        return Ok(bad);
    }
    Ok(Verdict::pass(p.cost(), p.imported_cost()))
}

/// Rejects targets outside [F,F].
pub fn check_abelianization(w: &Word) -> Result<()> {
    let ab = w.abelianization();
    if ab.is_empty() {
        return Ok(());
    }
    let s: Vec<String> = ab.iter().map(|(g, n)| format!("{}:{}", g, n)).collect();
    Err(Error::AbelianizationNonzero(s.join(", ")))
}

/// Only R1/R2 appear in the defining set; used to label witnesses.
pub fn is_defining(s: Schema) -> bool {
    s.is_primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldCtx;
    use crate::words::Root;

    #[test]
    fn translation_pair_verifies() {
        let ctx = FieldCtx::new(&["s", "t"]);
        let (s, t) = (ctx.var("s"), ctx.var("t"));
        let p = translation_pair(Root::Pos, &s, &t).unwrap();
        let v = verify_relator_product(&Presentation::Steinberg, &p).unwrap();
        assert!(v.ok);
        assert_eq!(v.cost, 2);
        let xs = Word::x(Root::Pos, s);
        let xt = Word::x(Root::Pos, t);
        assert_eq!(p.target, xs.comm(&xt));
    }

    #[test]
    fn empty_products_verify() {
        let v = verify_relator_product(&Presentation::Steinberg, &RelatorProduct::empty()).unwrap();
        assert!(v.ok);
        let v = verify_commutator_product(&Presentation::Steinberg, &CommutatorProduct::empty()).unwrap();
        assert!(v.ok && v.cost == 0);
    }

    #[test]
    fn sign_flip_is_caught() {
        let tk = torus_knot(2, 3).unwrap();
        let mut c = tk.commutator.clone();
        if let CommutatorFactor::Commutator { sign, .. } = &mut c.factors[0] {
            *sign = -*sign;
        }
        let v = verify_commutator_product(&tk.presentation, &c).unwrap();
        assert!(!v.ok && !v.residual.is_empty());
    }

    #[test]
    fn unknown_relator_is_an_error() {
        let tk = torus_knot(2, 3).unwrap();
        let mut p = tk.relator_product.clone();
        p.factors[0].relator = Relator::Named { name: "zz".into(), word: Word::named("a") };
        assert!(matches!(verify_relator_product(&tk.presentation, &p), Err(Error::UnknownRelator { .. })));
    }
}
