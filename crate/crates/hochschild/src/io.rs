//! JSON file format for algebras and bialgebras given by structure constants.
//!
//! ```json
//! {"field":{"kind":"GF","p":2},"dim":2,"basis":["1","x"],"unit":["1","0"],
//!  "mult":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]]}
//! ```
//!
//! Bialgebras add `comul` triples (i, j, k, c) meaning Δ(b_i) ∋ c·b_j⊗b_k,
//! a `counit` row, an optional `antipode` matrix (row-major, column j is
//! S(b_j)) and optional `r_matrix` pairs (i, j, c) meaning r ∋ c·b_i⊗b_j.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Algebra;
use crate::error::{HhError, Result};
use crate::field::{Field, FieldDesc, PrimeField, Rationals};
use crate::hopf::Bialgebra;
use crate::matrix::Matrix;

/// The raw document with coefficients kept as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<Coeff>,
    pub mult: Vec<(usize, usize, usize, Coeff)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comul: Option<Vec<(usize, usize, usize, Coeff)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<Coeff>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_matrix: Option<Vec<(usize, usize, Coeff)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
}

/// A coefficient; integers are accepted on input, strings are written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff(pub String);

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => Ok(Coeff(s)),
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(Coeff(n.to_string())),
            other => Err(serde::de::Error::custom(format!("coefficient must be a string or integer, got {other}"))),
        }
    }
}

impl FieldSpec {
    pub fn desc(&self) -> Result<FieldDesc> {
        let d = match (self.kind.as_str(), self.p) {
            ("GF" | "prime-field", Some(p)) => FieldDesc::Prime(p),
            ("GF" | "prime-field", None) => return Err(HhError::Schema("prime field needs \"p\"".into())),
            ("Q" | "rationals", None) => FieldDesc::Rationals,
            ("Q" | "rationals", Some(_)) => return Err(HhError::Schema("the rationals take no \"p\"".into())),
            (k, _) => return Err(HhError::Schema(format!("unknown field kind {k:?}"))),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn from_desc(d: FieldDesc) -> Self {
        match d {
            FieldDesc::Rationals => FieldSpec { kind: "Q".into(), p: None },
            FieldDesc::Prime(p) => FieldSpec { kind: "GF".into(), p: Some(p) },
        }
    }
}

/// A validated algebra, with its bialgebra structure when the file has one.
#[derive(Clone, Debug)]
pub struct Structure<K: Field> {
    pub algebra: Arc<Algebra<K>>,
    pub bialgebra: Option<Arc<Bialgebra<K>>>,
}

/// A parsed file over whichever field it declares.
#[derive(Clone, Debug)]
pub enum Parsed {
    Rational(Structure<Rationals>),
    Prime(Structure<PrimeField>),
}

impl Parsed {
    pub fn field(&self) -> FieldDesc {
        match self {
            Parsed::Rational(_) => FieldDesc::Rationals,
            Parsed::Prime(s) => s.algebra.field().desc(),
        }
    }

    pub fn to_file(&self) -> AlgebraFile {
        match self {
            Parsed::Rational(s) => to_file(s),
            Parsed::Prime(s) => to_file(s),
        }
    }
}

/// Parses, validates and checks all axioms.
pub fn parse_algebra_file(text: &str) -> Result<Parsed> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| HhError::Schema(e.to_string()))?;
    from_file(&file)
}

pub fn from_file(file: &AlgebraFile) -> Result<Parsed> {
    Ok(match file.field.desc()? {
        FieldDesc::Rationals => Parsed::Rational(build(&Rationals, file)?),
        FieldDesc::Prime(p) => Parsed::Prime(build(&PrimeField::new(p)?, file)?),
    })
}

fn coeffs<K: Field>(f: &K, v: &[Coeff]) -> Result<Vec<K::Elem>> {
    v.iter().map(|c| f.parse(&c.0)).collect()
}

fn in_range(what: &str, d: usize, idx: &[usize]) -> Result<()> {
    match idx.iter().find(|&&i| i >= d) {
        Some(i) => Err(HhError::OutOfRange(format!("{what} index {i} with dim {d}"))),
        None => Ok(()),
    }
}

/// Builds the structure over a known field and runs the checks.
pub fn build<K: Field>(f: &K, file: &AlgebraFile) -> Result<Structure<K>> {
    let d = file.dim;
    if file.basis.len() != d {
        return Err(HhError::Schema(format!("basis has {} labels, dim is {d}", file.basis.len())));
    }
    if file.unit.len() != d {
        return Err(HhError::Schema(format!("unit has {} entries, dim is {d}", file.unit.len())));
    }
    let mut triples = Vec::with_capacity(file.mult.len());
    for (i, j, k, c) in &file.mult {
        in_range("mult", d, &[*i, *j, *k])?;
        triples.push((*i, *j, *k, f.parse(&c.0)?));
    }
    let algebra = Algebra::from_triples(f, file.basis.clone(), &triples, coeffs(f, &file.unit)?)?;
    algebra.check().into_result()?;
    let algebra = Arc::new(algebra);

    let bialgebra = match (&file.comul, &file.counit) {
        (None, None) => {
            if file.antipode.is_some() || file.r_matrix.is_some() {
                return Err(HhError::Schema("antipode and r_matrix need comul and counit".into()));
            }
            None
        }
        (Some(_), None) | (None, Some(_)) => return Err(HhError::Schema("comul and counit come together".into())),
        (Some(comul), Some(counit)) => {
            let mut delta = Matrix::zeros(f, d * d, d);
            for (i, j, k, c) in comul {
                in_range("comul", d, &[*i, *j, *k])?;
                delta.add_at(j * d + k, *i, &f.parse(&c.0)?);
            }
            if counit.len() != d {
                return Err(HhError::Schema(format!("counit has {} entries, dim is {d}", counit.len())));
            }
            let antipode = match &file.antipode {
                None => None,
                Some(rows) => {
                    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                        return Err(HhError::Schema(format!("antipode must be {d}x{d}")));
                    }
                    let rows = rows.iter().map(|r| coeffs(f, r)).collect::<Result<Vec<_>>>()?;
                    Some(Matrix::from_rows(f, d, &rows))
                }
            };
            let r = match &file.r_matrix {
                None => None,
                Some(pairs) => {
                    let mut r = vec![f.zero(); d * d];
                    for (i, j, c) in pairs {
                        in_range("r_matrix", d, &[*i, *j])?;
                        r[i * d + j] = f.add(&r[i * d + j], &f.parse(&c.0)?);
                    }
                    Some(r)
                }
            };
            let b = Bialgebra::new(algebra.clone(), delta, coeffs(f, counit)?, antipode, r)?;
            b.check().into_result()?;
            if let Some(s) = b.antipode() {
                if s.inverse().is_none() {
                    return Err(HhError::Axiom("antipode is not invertible".into()));
                }
            }
            Some(Arc::new(b))
        }
    };
    Ok(Structure { algebra, bialgebra })
}

fn fmt_all<K: Field>(f: &K, v: &[K::Elem]) -> Vec<Coeff> {
    v.iter().map(|c| Coeff(f.format(c))).collect()
}

/// The canonical document: nonzero entries only, sorted by index.
pub fn to_file<K: Field>(s: &Structure<K>) -> AlgebraFile {
    let a = &s.algebra;
    let f = a.field();
    let d = a.dim();
    let mut mult = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for (k, c) in a.product_terms(i, j) {
                mult.push((i, j, *k, Coeff(f.format(c))));
            }
        }
    }
    let mut file = AlgebraFile {
        field: FieldSpec::from_desc(f.desc()),
        dim: d,
        basis: a.labels().to_vec(),
        unit: fmt_all(f, a.unit()),
        mult,
        comul: None,
        counit: None,
        antipode: None,
        r_matrix: None,
    };
    if let Some(b) = &s.bialgebra {
        let mut comul = Vec::new();
        for i in 0..d {
            for (jk, c) in b.comul().col(i).iter().enumerate() {
                if !f.is_zero(c) {
                    comul.push((i, jk / d, jk % d, Coeff(f.format(c))));
                }
            }
        }
        file.comul = Some(comul);
        file.counit = Some(fmt_all(f, b.counit()));
        file.antipode = b.antipode().map(|m| (0..d).map(|i| fmt_all(f, m.row(i))).collect());
        file.r_matrix = b.r_matrix().map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(ij, c)| (ij / d, ij % d, Coeff(f.format(c))))
                .collect()
        });
    }
    file
}

/// One key per line, one triple or matrix row per line.
pub fn serialize(file: &AlgebraFile) -> String {
    fn j<T: Serialize>(v: &T) -> String {
        serde_json::to_string(v).expect("serializable")
    }
    fn list<T: Serialize>(items: &[T]) -> String {
        if items.is_empty() {
            return "[]".into();
        }
        let rows: Vec<String> = items.iter().map(|t| format!("    {}", j(t))).collect();
        format!("[\n{}\n  ]", rows.join(",\n"))
    }
    let mut parts = vec![
        format!("  \"field\": {}", j(&file.field)),
        format!("  \"dim\": {}", file.dim),
        format!("  \"basis\": {}", j(&file.basis)),
        format!("  \"unit\": {}", j(&file.unit)),
        format!("  \"mult\": {}", list(&file.mult)),
    ];
    if let Some(c) = &file.comul {
        parts.push(format!("  \"comul\": {}", list(c)));
    }
    if let Some(c) = &file.counit {
        parts.push(format!("  \"counit\": {}", j(c)));
    }
    if let Some(s) = &file.antipode {
        parts.push(format!("  \"antipode\": {}", list(s)));
    }
    if let Some(r) = &file.r_matrix {
        parts.push(format!("  \"r_matrix\": {}", list(r)));
    }
    format!("{{\n{}\n}}\n", parts.join(",\n"))
}

pub fn serialize_structure<K: Field>(s: &Structure<K>) -> String {
    serialize(&to_file(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dual_numbers;
    use crate::hopf::taft;

    const DUAL: &str = r#"{"field":{"kind":"GF","p":2},"dim":2,"basis":["1","x"],"unit":["1","0"],
        "mult":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]]}"#;

    #[test]
    fn dual_numbers_parse() {
        let Parsed::Prime(s) = parse_algebra_file(DUAL).unwrap() else { panic!("wrong field") };
        assert_eq!(*s.algebra, dual_numbers(&PrimeField::new(2).unwrap()));
        assert!(s.bialgebra.is_none());
    }

    #[test]
    fn non_prime_rejected() {
        let text = DUAL.replace("\"p\":2", "\"p\":4");
        assert!(matches!(parse_algebra_file(&text), Err(HhError::InvalidField(_))));
    }

    #[test]
    fn schema_errors() {
        let bad = [
            DUAL.replace("[1,0,1,\"1\"]", "[1,0,2,\"1\"]"),
            DUAL.replace("\"GF\"", "\"GX\""),
            DUAL.replace("\"unit\":[\"1\",\"0\"]", "\"unit\":[\"1\"]"),
            DUAL.replace("\"dim\":2", "\"dim\":2,\"extra\":1"),
            DUAL.replace("[1,0,1,\"1\"]", "[1,0,1,\"a\"]"),
        ];
        for t in &bad {
            assert!(parse_algebra_file(t).is_err(), "{t}");
        }
    }

    #[test]
    fn axiom_failure_names_the_identity() {
        // x·1 missing: 1 is no longer a right unit
        let t = DUAL.replace(",[1,0,1,\"1\"]", "");
        let err = parse_algebra_file(&t).unwrap_err().to_string();
        assert!(err.contains("axiom"), "{err}");
    }

    #[test]
    fn rationals_and_aliases() {
        let t = DUAL.replace("{\"kind\":\"GF\",\"p\":2}", "{\"kind\":\"rationals\"}").replace("[0,1,1,\"1\"]", "[0,1,1,\"2/2\"]");
        let p = parse_algebra_file(&t).unwrap();
        assert_eq!(p.field(), FieldDesc::Rationals);
        assert_eq!(p.to_file().field.kind, "Q");
    }

    #[test]
    fn taft_round_trip() {
        let f = PrimeField::new(5).unwrap();
        let b = taft(&f, 2, &4, Some(&1)).unwrap();
        let s = Structure { algebra: b.algebra().clone(), bialgebra: Some(Arc::new(b)) };
        let text = serialize_structure(&s);
        let again = parse_algebra_file(&text).unwrap();
        assert_eq!(serialize(&again.to_file()), text);
        let Parsed::Prime(t) = again else { panic!("wrong field") };
        assert_eq!(t.bialgebra.as_deref(), s.bialgebra.as_deref());
    }
}
