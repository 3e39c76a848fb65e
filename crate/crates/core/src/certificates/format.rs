//! JSON certificate files. Printing a parsed file reproduces it byte for byte when the
//! input was produced by [`to_json`].

use super::{CommutatorFactor, CommutatorProduct, Presentation, Relator, RelatorFactor, RelatorProduct};
use crate::error::{Error, Result};
use crate::exactfield::{parse_field, Vars};
use crate::steinberg::{RelatorInstance, Schema};
use crate::words::{parse_word, Root, Word};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const FORMAT_NAME: &str = "ocl-certificate";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub enum Certificate {
    Relator(RelatorProduct),
    Commutator(CommutatorProduct),
}

impl Certificate {
    pub fn target(&self) -> &Word {
        match self {
            Certificate::Relator(p) => &p.target,
            Certificate::Commutator(p) => &p.target,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CertificateDoc {
    pub presentation: Presentation,
    pub vars: Vars,
    pub certificate: Certificate,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedRelFile {
    name: String,
    word: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresFile {
    name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    relators: Vec<NamedRelFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RelatorFile {
    Named { named: String },
    Stein { schema: String, alpha: i64, params: [String; 2] },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelFactorFile {
    conjugator: String,
    relator: RelatorFile,
    sign: i8,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductFile {
    target: String,
    factors: Vec<RelFactorFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CommFactorFile {
    Commutator { f: String, sign: i8, witness: ProductFile },
    Imported { imported: String, cost: usize, target: String, witness: ProductFile },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Body {
    RelatorProduct { target: String, factors: Vec<RelFactorFile> },
    CommutatorProduct { target: String, factors: Vec<CommFactorFile> },
}

#[derive(Serialize, Deserialize)]
struct CertFile {
    format: String,
    version: u32,
    presentation: PresFile,
    variables: Vec<String>,
    #[serde(flatten)]
    body: Body,
}

fn rel_to_file(r: &Relator) -> RelatorFile {
    match r {
        Relator::Named { name, .. } => RelatorFile::Named { named: name.clone() },
        Relator::Stein(i) => RelatorFile::Stein {
            schema: i.schema.name().to_string(),
            alpha: i.alpha.sign(),
            params: [i.params[0].to_string(), i.params[1].to_string()],
        },
    }
}

fn product_to_file(p: &RelatorProduct) -> ProductFile {
    ProductFile {
        target: p.target.to_string(),
        factors: p
            .factors
            .iter()
            .map(|f| RelFactorFile { conjugator: f.conjugator.to_string(), relator: rel_to_file(&f.relator), sign: f.sign })
            .collect(),
    }
}

pub fn to_json(doc: &CertificateDoc) -> Result<String> {
    let presentation = match &doc.presentation {
        Presentation::Finite { name, generators, relators } => PresFile {
            name: name.clone(),
            generators: generators.clone(),
            relators: relators.iter().map(|(n, w)| NamedRelFile { name: n.clone(), word: w.to_string() }).collect(),
        },
        Presentation::Steinberg => PresFile { name: "steinberg".into(), generators: vec![], relators: vec![] },
    };
    let body = match &doc.certificate {
        Certificate::Relator(p) => {
            let f = product_to_file(p);
            Body::RelatorProduct { target: f.target, factors: f.factors }
        }
        Certificate::Commutator(p) => Body::CommutatorProduct {
            target: p.target.to_string(),
            factors: p
                .factors
                .iter()
                .map(|f| match f {
                    CommutatorFactor::Commutator { f, witness, sign } => {
                        CommFactorFile::Commutator { f: f.to_string(), sign: *sign, witness: product_to_file(witness) }
                    }
                    CommutatorFactor::Imported { target, witness, cost, source } => CommFactorFile::Imported {
                        imported: source.clone(),
                        cost: *cost,
                        target: target.to_string(),
                        witness: product_to_file(witness),
                    },
                })
                .collect(),
        },
    };
    let file = CertFile {
        format: FORMAT_NAME.into(),
        version: FORMAT_VERSION,
        presentation,
        variables: doc.vars.as_ref().clone(),
        body,
    };
    let mut s = serde_json::to_string_pretty(&file).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

struct Reader<'a> {
    pres: &'a Presentation,
    vars: &'a Vars,
}

impl Reader<'_> {
    fn word(&self, s: &str) -> Result<Word> {
        parse_word(s, self.vars)
    }

    fn relator(&self, r: &RelatorFile) -> Result<Relator> {
        match r {
            RelatorFile::Named { named } => match self.pres {
                Presentation::Finite { relators, .. } => relators
                    .iter()
                    .find(|(n, _)| n == named)
                    .map(|(n, w)| Relator::Named { name: n.clone(), word: w.clone() })
                    .ok_or_else(|| Error::UnknownRelator { presentation: self.pres.name().into(), relator: named.clone() }),
                Presentation::Steinberg => {
                    Err(Error::UnknownRelator { presentation: "steinberg".into(), relator: named.clone() })
                }
            },
            RelatorFile::Stein { schema, alpha, params } => {
                let schema = Schema::parse(schema).ok_or_else(|| Error::UnknownRelator {
                    presentation: self.pres.name().into(),
                    relator: schema.clone(),
                })?;
                let alpha = Root::from_sign(*alpha).ok_or_else(|| Error::Invalid(format!("root sign {}", alpha)))?;
                let p = parse_field(&params[0], self.vars)?;
                let q = parse_field(&params[1], self.vars)?;
                Ok(Relator::Stein(RelatorInstance::new(schema, alpha, p, q)))
            }
        }
    }

    fn product(&self, target: &str, factors: &[RelFactorFile]) -> Result<RelatorProduct> {
        let factors = factors
            .iter()
            .map(|f| {
                Ok(RelatorFactor { conjugator: self.word(&f.conjugator)?, relator: self.relator(&f.relator)?, sign: f.sign })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RelatorProduct { target: self.word(target)?, factors })
    }
}

pub fn from_json(s: &str) -> Result<CertificateDoc> {
    let file: CertFile = serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
    if file.format != FORMAT_NAME || file.version != FORMAT_VERSION {
        return Err(Error::Invalid(format!("unsupported certificate format {} v{}", file.format, file.version)));
    }
    let vars: Vars = Arc::new(file.variables.clone());
    let presentation = if file.presentation.name == "steinberg" && file.presentation.generators.is_empty() {
        Presentation::Steinberg
    } else {
        let relators = file
            .presentation
            .relators
            .iter()
            .map(|r| Ok((r.name.clone(), parse_word(&r.word, &vars)?)))
            .collect::<Result<Vec<_>>>()?;
        Presentation::Finite { name: file.presentation.name.clone(), generators: file.presentation.generators.clone(), relators }
    };
    let rd = Reader { pres: &presentation, vars: &vars };
    let certificate = match &file.body {
        Body::RelatorProduct { target, factors } => Certificate::Relator(rd.product(target, factors)?),
        Body::CommutatorProduct { target, factors } => {
            let fs = factors
                .iter()
                .map(|f| match f {
                    CommFactorFile::Commutator { f, sign, witness } => Ok(CommutatorFactor::Commutator {
                        f: rd.word(f)?,
                        witness: rd.product(&witness.target, &witness.factors)?,
                        sign: *sign,
                    }),
                    CommFactorFile::Imported { imported, cost, target, witness } => Ok(CommutatorFactor::Imported {
                        target: rd.word(target)?,
                        witness: rd.product(&witness.target, &witness.factors)?,
                        cost: *cost,
                        source: imported.clone(),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            Certificate::Commutator(CommutatorProduct { target: rd.word(target)?, factors: fs })
        }
    };
    Ok(CertificateDoc { presentation, vars, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{torus_knot, translation_cert, TranslationMode};
    use crate::exactfield::FieldCtx;

    #[test]
    fn round_trip_is_exact() {
        let tk = torus_knot(3, 5).unwrap();
        for c in [Certificate::Relator(tk.relator_product.clone()), Certificate::Commutator(tk.commutator.clone())] {
            let doc = CertificateDoc { presentation: tk.presentation.clone(), vars: Arc::new(vec![]), certificate: c };
            let s = to_json(&doc).unwrap();
            let back = from_json(&s).unwrap();
            assert_eq!(to_json(&back).unwrap(), s);
        }
        let ctx = FieldCtx::new(&["s", "t"]);
        let c = translation_cert(Root::Pos, &ctx.var("s"), &ctx.var("t"), TranslationMode::Axiom).unwrap();
        let doc = CertificateDoc {
            presentation: Presentation::Steinberg,
            vars: ctx.vars().clone(),
            certificate: Certificate::Commutator(c),
        };
        let s = to_json(&doc).unwrap();
        assert_eq!(to_json(&from_json(&s).unwrap()).unwrap(), s);
    }
}
