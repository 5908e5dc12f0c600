//! JSON formats for chains, forms, witnesses and step functions, and the
//! fixed-precision writer used for every report.
//!
//! Chains: `{"n", "m", "terms": [{"coef", "vertices": [[x, …], …]}]}`.
//! Forms: `{"degree", "ambient", "components": {"1,3": [{"coef", "powers"}]}}`
//! with 1-based increasing index lists (`""` for a 0-form).
//! Witnesses: `{"lambda", "planes": [{"chain", "children": […]}]}`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chain::{OrientedSimplex, SimplicialChain};
use crate::complex::SpanningComplex;
use crate::error::{Error, Result};
use crate::forms::PolynomialForm;
use crate::geometry::Point;
use crate::norms::{SpanningWitness, WitnessPlane};
use crate::poly::Polynomial;

/// Serde error carrying the bare message of a parse error.
fn custom<E: serde::de::Error>(e: Error) -> E {
    match e {
        Error::Parse(m) => E::custom(m),
        other => E::custom(other),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    coef: f64,
    vertices: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainFile {
    n: usize,
    m: usize,
    terms: Vec<TermFile>,
}

impl ChainFile {
    fn from_chain(a: &SimplicialChain) -> Self {
        let terms = a
            .terms()
            .iter()
            .map(|t| TermFile { coef: t.coef, vertices: t.simplex.vertices().iter().map(|p| p.coords().to_vec()).collect() })
            .collect();
        Self { n: a.dim(), m: a.ambient(), terms }
    }

    fn into_chain(self) -> Result<SimplicialChain> {
        let mut out = SimplicialChain::zero(self.n, self.m);
        for (i, t) in self.terms.into_iter().enumerate() {
            let vertices = t.vertices.into_iter().map(Point::new).collect::<Result<Vec<_>>>()?;
            let s = OrientedSimplex::new(vertices).map_err(|e| Error::Parse(format!("term {i}: {e}")))?;
            out.push(t.coef, s).map_err(|e| Error::Parse(format!("term {i}: {e}")))?;
        }
        Ok(out)
    }
}

impl Serialize for SimplicialChain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChainFile::from_chain(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialChain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ChainFile::deserialize(d)?.into_chain().map_err(custom::<D::Error>)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialFile {
    coef: f64,
    powers: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormFile {
    degree: usize,
    ambient: usize,
    components: BTreeMap<String, Vec<MonomialFile>>,
}

fn index_key(idx: &[usize]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn parse_index_key(key: &str) -> Result<Vec<usize>> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::Parse(format!("bad component index {s:?} in {key:?} (indices are 1-based)"))),
        })
        .collect()
}

impl FormFile {
    fn from_form(w: &PolynomialForm) -> Self {
        let components = w
            .components()
            .map(|(idx, p)| {
                let monos = p.terms().map(|(e, c)| MonomialFile { coef: c, powers: e.clone() }).collect();
                (index_key(idx), monos)
            })
            .collect();
        Self { degree: w.degree(), ambient: w.ambient(), components }
    }

    fn into_form(self) -> Result<PolynomialForm> {
        let mut w = PolynomialForm::zero(self.degree, self.ambient);
        for (key, monos) in self.components {
            let idx = parse_index_key(&key)?;
            if idx.windows(2).any(|p| p[0] >= p[1]) {
                return Err(Error::Parse(format!("component {key:?} is not an increasing index list")));
            }
            let mut p = Polynomial::zero(self.ambient);
            for (j, mono) in monos.into_iter().enumerate() {
                if mono.powers.len() != self.ambient {
                    return Err(Error::Parse(format!(
                        "component {key:?} monomial {j}: {} powers for ambient dimension {}",
                        mono.powers.len(),
                        self.ambient
                    )));
                }
                if !mono.coef.is_finite() {
                    return Err(Error::Parse(format!("component {key:?} monomial {j}: non-finite coefficient")));
                }
                p.add_term(mono.powers, mono.coef);
            }
            w.add_wedge(&idx, p).map_err(|e| Error::Parse(format!("component {key:?}: {e}")))?;
        }
        Ok(w)
    }
}

impl Serialize for PolynomialForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormFile::from_form(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolynomialForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FormFile::deserialize(d)?.into_form().map_err(custom::<D::Error>)
    }
}

impl Serialize for WitnessPlane {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Plane<'a> {
            chain: &'a SimplicialChain,
            children: &'a [WitnessPlane],
        }
        Plane { chain: &self.chain, children: &self.children }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WitnessPlane {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Plane {
            chain: SimplicialChain,
            #[serde(default)]
            children: Vec<WitnessPlane>,
        }
        let p = Plane::deserialize(d)?;
        Ok(WitnessPlane { chain: p.chain, children: p.children })
    }
}

impl Serialize for SpanningWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct W<'a> {
            lambda: f64,
            planes: &'a [WitnessPlane],
        }
        W { lambda: self.lambda, planes: &self.planes }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpanningWitness {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct W {
            lambda: f64,
            #[serde(default)]
            planes: Vec<WitnessPlane>,
        }
        let w = W::deserialize(d)?;
        if !w.lambda.is_finite() {
            return Err(D::Error::custom("lambda must be finite"));
        }
        Ok(SpanningWitness { lambda: w.lambda, planes: w.planes })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    n: usize,
    m: usize,
    cells: Vec<Vec<Vec<f64>>>,
}

impl Serialize for SpanningComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let cells = (0..self.depth())
            .rev()
            .flat_map(|l| self.cells(l).iter())
            .map(|c| c.vertices().iter().map(|p| p.coords().to_vec()).collect())
            .collect();
        ComplexFile { n: self.base_dim(), m: self.ambient(), cells }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpanningComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = ComplexFile::deserialize(d)?;
        let cells = f
            .cells
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let v = c.into_iter().map(Point::new).collect::<Result<Vec<_>>>()?;
                OrientedSimplex::new(v).map_err(|e| Error::Parse(format!("cell {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(custom::<D::Error>)?;
        SpanningComplex::new(f.n, f.m, cells).map_err(custom::<D::Error>)
    }
}

/// Parses JSON text; errors carry line and column, also for semantic
/// errors raised after a value is read.
pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    // serde_json positions errors raised inside a sequence, so parse the
    // document as the single element of one
    let wrapped = format!("[{text}\n]");
    match serde_json::from_str::<(T,)>(&wrapped) {
        Ok((v,)) => Ok(v),
        Err(e) => {
            let full = e.to_string();
            let msg = full.rfind(" at line ").map_or(full.as_str(), |i| &full[..i]);
            let (line, column) = (e.line(), if e.line() == 1 { e.column().saturating_sub(1) } else { e.column() });
            let line = line.min(text.lines().count().max(1));
            Err(Error::Parse(format!("line {line}, column {column}: {msg}")))
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    from_json_str(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Writes floats as `{:.16e}` (17 significant digits), non-finite values
/// as `null`, so that equal values always print identically.
struct FixedFloats;

impl serde_json::ser::Formatter for FixedFloats {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> std::io::Result<()> {
        if value.is_finite() {
            // fold −0 so that zero has a single spelling
            write!(w, "{:.16e}", if value == 0.0 { 0.0 } else { value })
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_string(value)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::common;

    #[test]
    fn chain_round_trip() {
        let text = r#"{"n": 1, "m": 2, "terms": [{"coef": 2.5, "vertices": [[0, 0], [1, 0.5]]}]}"#;
        let a: SimplicialChain = from_json_str(text).unwrap();
        assert_eq!(a.len(), 1);
        let back: SimplicialChain = from_json_str(&to_json_string(&a).unwrap()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn chain_errors_have_positions() {
        let err = from_json_str::<SimplicialChain>("{\n\"n\": 1,\n\"m\": 2,\n\"terms\": [{\"coef\": 1, \"vertices\": [[0, 0]]}]}")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 4"), "{err}");
        assert!(from_json_str::<SimplicialChain>("{\"n\": 1").unwrap_err().to_string().contains("line 1"));
    }

    #[test]
    fn form_keys_are_one_based() {
        let w = common::x_dy();
        let text = to_json_string(&w).unwrap();
        assert!(text.contains("\"2\""), "{text}");
        let back: PolynomialForm = from_json_str(&text).unwrap();
        assert_eq!(back, w);
        let dxdz: PolynomialForm =
            from_json_str(r#"{"degree": 2, "ambient": 3, "components": {"1,3": [{"coef": 1, "powers": [0, 0, 0]}]}}"#).unwrap();
        assert_eq!(dxdz.components().next().unwrap().0, &vec![0, 2]);
        assert!(from_json_str::<PolynomialForm>(r#"{"degree": 1, "ambient": 2, "components": {"0": []}}"#).is_err());
        let f: PolynomialForm =
            from_json_str(r#"{"degree": 0, "ambient": 1, "components": {"": [{"coef": 3, "powers": [2]}]}}"#).unwrap();
        assert_eq!(f.degree(), 0);
    }

    #[test]
    fn witness_and_floats() {
        let text = r#"{"lambda": 2, "planes": [{"chain": {"n": 2, "m": 2, "terms": []}, "children": []}]}"#;
        let w: SpanningWitness = from_json_str(text).unwrap();
        assert_eq!(w.planes.len(), 1);
        let s = to_json_string(&w).unwrap();
        assert!(s.contains("2.0000000000000000e0"), "{s}");
        assert_eq!(to_json_string(&-0.0f64).unwrap(), "0.0000000000000000e0\n");
        assert_eq!(to_json_string(&f64::NAN).unwrap(), "null\n");
    }
}
