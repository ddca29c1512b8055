//! JSON documents for monoids, extensions, semimodules, factor systems and
//! points.
//!
//! Every document parses strictly (unknown fields are rejected) and emits a
//! single canonical line, so `emit(parse(emit(d))) == emit(d)`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use schext::action::{SchreierPoint, Semimodule};
use schext::cofib::{CofibError, FactorSystem};
use schext::extension::{Extension, SchreierData};
use schext::finmon::{Elem, FiniteMonoid, Hom};

/// A document that failed to parse or validate, with the position of the
/// fault (`line L column C` for syntax, a field path otherwise).
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{location}: {message}")]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl ParseError {
    fn at(location: impl Into<String>, message: impl ToString) -> Self {
        ParseError {
            location: location.into(),
            message: message.to_string(),
        }
    }
}

fn join(prefix: &str, field: &str) -> String {
    if prefix.is_empty() {
        field.to_string()
    } else {
        format!("{prefix}.{field}")
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, ParseError> {
    serde_json::from_str(text)
        .map_err(|e| ParseError::at(format!("line {} column {}", e.line(), e.column()), e))
}

/// The canonical single-line form, newline terminated.
pub fn emit<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("documents always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub order: usize,
    pub table: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchreierDoc {
    pub reps: Vec<Vec<Elem>>,
    pub base_reps: Vec<Elem>,
    pub q: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub kernel: MonoidDoc,
    pub carrier: MonoidDoc,
    pub base: MonoidDoc,
    pub k: Vec<Elem>,
    pub f: Vec<Elem>,
    /// Stored Schreier data, installed as is.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schreier: Option<SchreierDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemimoduleDoc {
    pub monoid: MonoidDoc,
    pub module: MonoidDoc,
    /// `action[m][a] = m * a`.
    pub action: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSystemDoc {
    pub semimodule: SemimoduleDoc,
    pub g: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub kernel: MonoidDoc,
    pub carrier: MonoidDoc,
    pub base: MonoidDoc,
    pub k: Vec<Elem>,
    pub f: Vec<Elem>,
    pub s: Vec<Elem>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusDoc {
    pub extensions: Vec<ExtensionDoc>,
}

fn check_entries(path: &str, values: &[Elem], bound: usize) -> Result<(), ParseError> {
    match values.iter().position(|&v| v >= bound) {
        Some(i) => Err(ParseError::at(
            format!("{path}[{i}]"),
            format!("{} is not below {bound}", values[i]),
        )),
        None => Ok(()),
    }
}

fn check_len(path: &str, len: usize, expected: usize) -> Result<(), ParseError> {
    if len != expected {
        return Err(ParseError::at(
            path,
            format!("expected {expected} entries, found {len}"),
        ));
    }
    Ok(())
}

fn check_square(
    path: &str,
    rows: &[Vec<Elem>],
    nrows: usize,
    ncols: usize,
    bound: usize,
) -> Result<(), ParseError> {
    check_len(path, rows.len(), nrows)?;
    for (i, row) in rows.iter().enumerate() {
        let p = format!("{path}[{i}]");
        check_len(&p, row.len(), ncols)?;
        check_entries(&p, row, bound)?;
    }
    Ok(())
}

impl MonoidDoc {
    pub fn from_monoid(m: &FiniteMonoid) -> Self {
        MonoidDoc {
            order: m.order(),
            table: m.rows(),
        }
    }

    pub fn to_monoid(&self, path: &str) -> Result<FiniteMonoid, ParseError> {
        if self.order == 0 {
            return Err(ParseError::at(
                join(path, "order"),
                "a monoid has at least one element",
            ));
        }
        check_square(
            &join(path, "table"),
            &self.table,
            self.order,
            self.order,
            self.order,
        )?;
        FiniteMonoid::from_table(&self.table).map_err(|e| ParseError::at(join(path, "table"), e))
    }
}

fn hom(
    path: &str,
    dom: &FiniteMonoid,
    cod: &FiniteMonoid,
    map: &[Elem],
    name: &str,
) -> Result<Hom, ParseError> {
    let p = join(path, name);
    check_len(&p, map.len(), dom.order())?;
    check_entries(&p, map, cod.order())?;
    Hom::new(dom, cod, map.to_vec())
        .map_err(|e| ParseError::at(p, format!("{name} is not a homomorphism: {e}")))
}

impl ExtensionDoc {
    pub fn from_extension(e: &Extension) -> Self {
        ExtensionDoc {
            kernel: MonoidDoc::from_monoid(e.kernel()),
            carrier: MonoidDoc::from_monoid(e.carrier()),
            base: MonoidDoc::from_monoid(e.base()),
            k: e.k().map().to_vec(),
            f: e.f().map().to_vec(),
            schreier: None,
        }
    }

    /// Includes the cached Schreier data when the extension has it.
    pub fn with_schreier(e: &Extension) -> Self {
        let mut doc = Self::from_extension(e);
        doc.schreier = e.schreier().ok().map(|s| SchreierDoc {
            reps: s.all_reps().to_vec(),
            base_reps: s.base_reps().to_vec(),
            q: s.q_table().to_vec(),
        });
        doc
    }

    pub fn to_extension(&self, path: &str) -> Result<Extension, ParseError> {
        let kernel = self.kernel.to_monoid(&join(path, "kernel"))?;
        let carrier = self.carrier.to_monoid(&join(path, "carrier"))?;
        let base = self.base.to_monoid(&join(path, "base"))?;
        let k = hom(path, &kernel, &carrier, &self.k, "k")?;
        let f = hom(path, &carrier, &base, &self.f, "f")?;
        let e = Extension::new(k, f)
            .map_err(|err| ParseError::at(if path.is_empty() { "extension" } else { path }, err))?;
        let Some(s) = &self.schreier else {
            return Ok(e);
        };
        let p = join(path, "schreier");
        let (nx, nm) = (carrier.order(), base.order());
        check_len(&join(&p, "reps"), s.reps.len(), nm)?;
        for (m, r) in s.reps.iter().enumerate() {
            check_entries(&format!("{}[{m}]", join(&p, "reps")), r, nx)?;
        }
        check_len(&join(&p, "base_reps"), s.base_reps.len(), nm)?;
        check_entries(&join(&p, "base_reps"), &s.base_reps, nx)?;
        check_len(&join(&p, "q"), s.q.len(), nx)?;
        check_entries(&join(&p, "q"), &s.q, kernel.order())?;
        Ok(e.with_schreier_data(SchreierData::from_parts(
            s.reps.clone(),
            s.base_reps.clone(),
            s.q.clone(),
        )))
    }
}

impl SemimoduleDoc {
    pub fn from_semimodule(s: &Semimodule) -> Self {
        SemimoduleDoc {
            monoid: MonoidDoc::from_monoid(s.monoid()),
            module: MonoidDoc::from_monoid(s.module()),
            action: s.rows(),
        }
    }

    pub fn to_semimodule(&self, path: &str) -> Result<Semimodule, ParseError> {
        let m = self.monoid.to_monoid(&join(path, "monoid"))?;
        let k = self.module.to_monoid(&join(path, "module"))?;
        let p = join(path, "action");
        check_square(&p, &self.action, m.order(), k.order(), k.order())?;
        Semimodule::from_rows(&m, &k, &self.action).map_err(|e| ParseError::at(p, e))
    }
}

impl FactorSystemDoc {
    pub fn from_factor_system(g: &FactorSystem) -> Self {
        FactorSystemDoc {
            semimodule: SemimoduleDoc::from_semimodule(g.semimodule()),
            g: g.rows(),
        }
    }

    pub fn to_factor_system(&self, path: &str) -> Result<FactorSystem, ParseError> {
        let s = self.semimodule.to_semimodule(&join(path, "semimodule"))?;
        let p = join(path, "g");
        let nm = s.monoid().order();
        check_square(&p, &self.g, nm, nm, s.module().order())?;
        FactorSystem::from_rows(&s, &self.g).map_err(|e: CofibError| ParseError::at(p, e))
    }
}

impl PointDoc {
    pub fn from_point(p: &SchreierPoint) -> Self {
        PointDoc {
            kernel: MonoidDoc::from_monoid(p.kernel()),
            carrier: MonoidDoc::from_monoid(p.carrier()),
            base: MonoidDoc::from_monoid(p.base()),
            k: p.k().map().to_vec(),
            f: p.f().map().to_vec(),
            s: p.s().map().to_vec(),
        }
    }

    pub fn to_point(&self, path: &str) -> Result<SchreierPoint, ParseError> {
        let kernel = self.kernel.to_monoid(&join(path, "kernel"))?;
        let carrier = self.carrier.to_monoid(&join(path, "carrier"))?;
        let base = self.base.to_monoid(&join(path, "base"))?;
        let k = hom(path, &kernel, &carrier, &self.k, "k")?;
        let f = hom(path, &carrier, &base, &self.f, "f")?;
        let s = hom(path, &base, &carrier, &self.s, "s")?;
        SchreierPoint::new(k, f, s)
            .map_err(|e| ParseError::at(if path.is_empty() { "point" } else { path }, e))
    }
}

impl CorpusDoc {
    pub fn to_extensions(&self) -> Result<Vec<Extension>, ParseError> {
        self.extensions
            .iter()
            .enumerate()
            .map(|(i, d)| d.to_extension(&format!("extensions[{i}]")))
            .collect()
    }
}

pub fn parse_monoid(text: &str) -> Result<FiniteMonoid, ParseError> {
    parse::<MonoidDoc>(text)?.to_monoid("")
}

pub fn parse_extension(text: &str) -> Result<Extension, ParseError> {
    parse::<ExtensionDoc>(text)?.to_extension("")
}

pub fn parse_semimodule(text: &str) -> Result<Semimodule, ParseError> {
    parse::<SemimoduleDoc>(text)?.to_semimodule("")
}

pub fn parse_factor_system(text: &str) -> Result<FactorSystem, ParseError> {
    parse::<FactorSystemDoc>(text)?.to_factor_system("")
}

pub fn parse_point(text: &str) -> Result<SchreierPoint, ParseError> {
    parse::<PointDoc>(text)?.to_point("")
}

#[cfg(test)]
mod tests {
    use super::*;
    use schext::action::semidirect;
    use schext::extension::product_extension;

    fn c2() -> FiniteMonoid {
        FiniteMonoid::cyclic_group(2)
    }

    fn round_trip<T: Serialize + DeserializeOwned>(doc: &T) {
        let text = emit(doc);
        let again: T = parse(&text).unwrap();
        assert_eq!(emit(&again), text);
    }

    #[test]
    fn monoid_documents() {
        let text = emit(&MonoidDoc::from_monoid(
            &FiniteMonoid::two_element_semilattice(),
        ));
        assert_eq!(text, "{\"order\":2,\"table\":[[0,1],[1,1]]}\n");
        assert_eq!(
            emit(&MonoidDoc::from_monoid(&parse_monoid(&text).unwrap())),
            text
        );
        round_trip(&MonoidDoc::from_monoid(&FiniteMonoid::symmetric_group3()));
    }

    #[test]
    fn every_kind_round_trips() {
        let e = Extension::es3();
        round_trip(&ExtensionDoc::from_extension(&e));
        round_trip(&ExtensionDoc::with_schreier(&e));
        let s = schext::action::to_semimodule(&e).unwrap();
        round_trip(&SemimoduleDoc::from_semimodule(&s));
        round_trip(&FactorSystemDoc::from_factor_system(&FactorSystem::zero(
            &s,
        )));
        round_trip(&PointDoc::from_point(&semidirect(&s).unwrap()));
        round_trip(&CorpusDoc {
            extensions: vec![ExtensionDoc::from_extension(&e)],
        });
    }

    #[test]
    fn documents_rebuild_the_same_objects() {
        let e = Extension::es3();
        let back = ExtensionDoc::with_schreier(&e).to_extension("").unwrap();
        assert_eq!(back, e);
        assert_eq!(back.schreier().unwrap(), e.schreier().unwrap());
        let s = schext::action::to_semimodule(&e).unwrap();
        assert_eq!(
            SemimoduleDoc::from_semimodule(&s)
                .to_semimodule("")
                .unwrap(),
            s
        );
        let p = semidirect(&s).unwrap();
        assert_eq!(PointDoc::from_point(&p).to_point("").unwrap(), p);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse_monoid("{\"order\":1,\"table\":[[0]],\"name\":\"x\"}").unwrap_err();
        assert!(err.message.contains("unknown field"), "{err}");
        assert!(err.location.starts_with("line 1"));
    }

    #[test]
    fn numbers_are_validated() {
        assert!(parse_monoid("{\"order\":2,\"table\":[[0,1],[1,-1]]}")
            .unwrap_err()
            .location
            .starts_with("line"));
        assert!(parse_monoid("{\"order\":2,\"table\":[[0,1],[1,0.5]]}").is_err());
        let err = parse_monoid("{\"order\":2,\"table\":[[0,1],[1,2]]}").unwrap_err();
        assert_eq!(err.location, "table[1][1]");
        let err = parse_monoid("{\"order\":2,\"table\":[[0,1]]}").unwrap_err();
        assert_eq!(err.location, "table");
        let err = parse_monoid("{\"order\":3,\"table\":[[0,1,2],[1,2,0],[2,0,0]]}").unwrap_err();
        assert_eq!(err.location, "table");
    }

    #[test]
    fn extension_with_bad_k_is_rejected() {
        let mut doc = ExtensionDoc::from_extension(&product_extension(&c2(), &c2()));
        doc.k = vec![1, 0];
        let err = parse_extension(&emit(&doc)).unwrap_err();
        assert_eq!(err.location, "k");
        assert!(err.message.contains("not a homomorphism"));
        doc.k = vec![0, 9];
        assert_eq!(parse_extension(&emit(&doc)).unwrap_err().location, "k[1]");
    }

    #[test]
    fn extension_that_is_not_a_kernel_is_rejected() {
        let mut doc = ExtensionDoc::from_extension(&product_extension(&c2(), &c2()));
        doc.k = vec![0, 0];
        let err = parse_extension(&emit(&doc)).unwrap_err();
        assert_eq!(err.location, "extension");
    }

    #[test]
    fn semimodule_failing_a3_names_the_triple() {
        let k = FiniteMonoid::cyclic_group(3);
        let doc = SemimoduleDoc {
            monoid: MonoidDoc::from_monoid(&c2()),
            module: MonoidDoc::from_monoid(&k),
            action: vec![vec![0, 1, 2], vec![0, 1, 1]],
        };
        let err = parse_semimodule(&emit(&doc)).unwrap_err();
        assert_eq!(err.location, "action");
        assert!(err.message.contains("A3 fails at (1, 1, 1)"), "{err}");
    }

    #[test]
    fn stored_schreier_data_is_shape_checked() {
        let mut doc = ExtensionDoc::with_schreier(&product_extension(&c2(), &c2()));
        doc.schreier.as_mut().unwrap().q = vec![0, 1, 0, 5];
        assert_eq!(
            parse_extension(&emit(&doc)).unwrap_err().location,
            "schreier.q[3]"
        );
    }

    #[test]
    fn invalid_factor_systems_are_rejected() {
        let s = Semimodule::trivial(&c2(), &c2()).unwrap();
        let doc = FactorSystemDoc {
            semimodule: SemimoduleDoc::from_semimodule(&s),
            g: vec![vec![0, 1], vec![0, 0]],
        };
        assert_eq!(parse_factor_system(&emit(&doc)).unwrap_err().location, "g");
    }
}
