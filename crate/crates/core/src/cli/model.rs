//! Model files: schema, validation, and compilation to a volume polynomial.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bodies::{mixed_volumes, BodyFamily, Polytope};
use crate::cone::{ConeModel, GeneratorTag, SamplePlan};
use crate::error::{Error, Result};
use crate::matroid::{bergman_volume_polynomial, chow_ring, DivisorSpec, Matroid};
use crate::poly::{Direction, VolumePolynomial};
use crate::rational::{parse_rational, serde_rational, Rational};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Tensor,
    Polytopes,
    Matroid,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub exponent: Vec<u32>,
    #[serde(with = "serde_rational")]
    pub coeff: Rational,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MatroidSource {
    Bases { ground_size: usize, bases: Vec<Vec<usize>> },
    /// `[rank, size]`.
    Uniform { uniform: (usize, usize) },
    Graphic { graphic: GraphSpec },
}

/// The on-disk model (`"format": 1`).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub format: u32,
    pub kind: ModelKind,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub nvars: Option<usize>,
    #[serde(default)]
    pub degree: Option<u32>,
    #[serde(default)]
    pub terms: Option<Vec<TermSpec>>,
    #[serde(default)]
    pub bodies: Option<Vec<Polytope>>,
    #[serde(default)]
    pub matroid: Option<MatroidSource>,
    #[serde(default)]
    pub divisors: Option<Vec<DivisorSpec>>,
    #[serde(default)]
    pub nef_generators: Option<Vec<Direction>>,
    #[serde(default)]
    pub psef_generators: Option<Vec<Direction>>,
    #[serde(default)]
    pub facet_normals: Option<Vec<Direction>>,
    #[serde(default)]
    pub tags: Option<Vec<GeneratorTag>>,
    #[serde(default)]
    pub kahler_samples: Option<Vec<Direction>>,
    /// Default classes in the vector syntax of the command line.
    #[serde(default)]
    pub alpha: Option<String>,
    #[serde(default)]
    pub beta: Option<String>,
    #[serde(default)]
    pub omega: Option<String>,
}

/// A validated, compiled model.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    pub kind: ModelKind,
    pub f: VolumePolynomial,
    pub nef: ConeModel,
    pub psef: Option<ConeModel>,
    pub kahler_samples: Option<Vec<Direction>>,
    pub alpha: Option<Direction>,
    pub beta: Option<Direction>,
    pub omega: Option<Direction>,
    pub bodies: Option<BodyFamily>,
    /// For matroid models, the dimension of the divisors' span in degree
    /// one of the Chow ring.
    pub divisor_rank: Option<usize>,
}

impl Model {
    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// Explicit Kahler samples when given, otherwise the cone's plan.
    pub fn sample_plan(&self, count: usize) -> SamplePlan {
        match &self.kahler_samples {
            Some(points) => SamplePlan { points: points.clone() },
            None => self.nef.sample_plan(count),
        }
    }

    /// The model's `omega`, defaulting to the sum of the nef generators.
    pub fn default_omega(&self) -> Direction {
        self.omega
            .clone()
            .unwrap_or_else(|| Direction::sum(self.nvars(), &self.nef.generators))
    }

    /// Where the coordinates live, for labelling certificates.
    pub fn coordinates(&self) -> &'static str {
        match self.kind {
            ModelKind::Tensor => "ambient",
            ModelKind::Polytopes => "body scalings",
            ModelKind::Matroid => "intrinsic: divisor classes in the Chow ring",
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::schema(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

/// Parses and validates model text; `fallback_name` names unnamed models.
pub fn parse_model(text: &str, fallback_name: &str) -> Result<Model> {
    let file: ModelFile = serde_json::from_str(text).map_err(json_error)?;
    compile(file, fallback_name)
}

/// Reads a model from a path, or from the shipped corpus by name.
pub fn load_model(path: &str) -> Result<Model> {
    let p = Path::new(path);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or(path);
        return parse_model(&text, stem);
    }
    let name = path.trim_end_matches(".json");
    match super::corpus::builtin(name) {
        Some(text) => parse_model(text, name),
        None => Err(Error::Io(format!("{path}: no such file or shipped model"))),
    }
}

fn require<T>(field: Option<T>, name: &str, kind: &str) -> Result<T> {
    field.ok_or_else(|| Error::schema(name, format!("required for kind {kind}")))
}

fn forbid<T>(field: &Option<T>, name: &str, kind: &str) -> Result<()> {
    match field {
        Some(_) => Err(Error::schema(name, format!("not allowed for kind {kind}"))),
        None => Ok(()),
    }
}

fn check_dims(dirs: &Option<Vec<Direction>>, name: &str, s: usize) -> Result<()> {
    for (i, v) in dirs.iter().flatten().enumerate() {
        if v.dim() != s {
            return Err(Error::schema(
                format!("{name}[{i}]"),
                format!("has {} coordinates, expected {s}", v.dim()),
            ));
        }
    }
    Ok(())
}

pub fn compile(file: ModelFile, fallback_name: &str) -> Result<Model> {
    if file.format != FORMAT_VERSION {
        return Err(Error::schema(
            "format",
            format!("unsupported version {}, expected {FORMAT_VERSION}", file.format),
        ));
    }
    let name = file.name.clone().unwrap_or_else(|| fallback_name.to_string());
    let mut bodies = None;
    let mut divisor_rank = None;
    let f = match file.kind {
        ModelKind::Tensor => {
            forbid(&file.bodies, "bodies", "tensor")?;
            forbid(&file.matroid, "matroid", "tensor")?;
            forbid(&file.divisors, "divisors", "tensor")?;
            let nvars = require(file.nvars, "nvars", "tensor")?;
            let degree = require(file.degree, "degree", "tensor")?;
            let terms = require(file.terms.clone(), "terms", "tensor")?;
            for (i, t) in terms.iter().enumerate() {
                if t.exponent.len() != nvars {
                    return Err(Error::schema(
                        format!("terms[{i}].exponent"),
                        format!("has {} entries, expected nvars = {nvars}", t.exponent.len()),
                    ));
                }
                let total: u32 = t.exponent.iter().sum();
                if total != degree {
                    return Err(Error::schema(
                        format!("terms[{i}].exponent"),
                        format!("non-homogeneous term of degree {total}, expected {degree}"),
                    ));
                }
            }
            VolumePolynomial::new(nvars, degree, terms.into_iter().map(|t| (t.exponent, t.coeff)).collect::<Vec<_>>())?
        }
        ModelKind::Polytopes => {
            forbid(&file.terms, "terms", "polytopes")?;
            forbid(&file.matroid, "matroid", "polytopes")?;
            forbid(&file.divisors, "divisors", "polytopes")?;
            let list = require(file.bodies.clone(), "bodies", "polytopes")?;
            let family = BodyFamily::new(list).map_err(|e| Error::schema("bodies", e.to_string()))?;
            let f = mixed_volumes(&family)?;
            bodies = Some(family);
            f
        }
        ModelKind::Matroid => {
            forbid(&file.terms, "terms", "matroid")?;
            forbid(&file.bodies, "bodies", "matroid")?;
            let source = require(file.matroid.clone(), "matroid", "matroid")?;
            let m = match source {
                MatroidSource::Bases { ground_size, bases } => Matroid::new(ground_size, &bases),
                MatroidSource::Uniform { uniform: (r, n) } => Matroid::uniform(r, n),
                MatroidSource::Graphic { graphic } => Matroid::graphic(graphic.vertices, &graphic.edges),
            }
            .map_err(|e| Error::schema("matroid", e.to_string()))?;
            let divisors = file
                .divisors
                .clone()
                .unwrap_or_else(|| vec![DivisorSpec::Alpha, DivisorSpec::Beta]);
            let ring = chow_ring(&m)?;
            divisor_rank = Some(ring.divisor_rank(&divisors)?);
            bergman_volume_polynomial(&ring, &divisors)?.0
        }
    };
    let s = f.nvars();
    for (field, dirs) in [
        ("nef_generators", &file.nef_generators),
        ("psef_generators", &file.psef_generators),
        ("facet_normals", &file.facet_normals),
        ("kahler_samples", &file.kahler_samples),
    ] {
        check_dims(dirs, field, s)?;
    }
    let mut nef = match (&file.nef_generators, &file.facet_normals) {
        (Some(g), _) => ConeModel::from_generators("nef", g.clone())?,
        (None, Some(n)) => ConeModel::from_facets("nef", n.clone())?,
        (None, None) => ConeModel::positive_orthant(s),
    };
    if let Some(tags) = &file.tags {
        if tags.len() != nef.generators.len() {
            return Err(Error::schema(
                "tags",
                format!("{} tags for {} generators", tags.len(), nef.generators.len()),
            ));
        }
        nef = nef.with_tags(tags.clone())?;
    }
    let psef = file
        .psef_generators
        .as_ref()
        .map(|g| ConeModel::from_generators("psef", g.clone()))
        .transpose()?;
    let vector = |field: &Option<String>, name: &str| -> Result<Option<Direction>> {
        field
            .as_deref()
            .map(|t| parse_vector(t, s).map_err(|e| Error::schema(name, e.to_string())))
            .transpose()
    };
    Ok(Model {
        alpha: vector(&file.alpha, "alpha")?,
        beta: vector(&file.beta, "beta")?,
        omega: vector(&file.omega, "omega")?,
        name,
        kind: file.kind,
        f,
        nef,
        psef,
        kahler_samples: file.kahler_samples,
        bodies,
        divisor_rank,
    })
}

/// Parses `e2`, `2*e1+1/2*e3`, or a coordinate list `1,1/2,0`.
pub fn parse_vector(text: &str, s: usize) -> Result<Direction> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::input("empty vector"));
    }
    if t.contains('e') {
        let mut v = Direction::zeros(s);
        for term in t.split('+') {
            let term = term.trim();
            let (coeff, unit) = match term.split_once('*') {
                Some((c, u)) => (parse_rational(c)?, u.trim()),
                None => (Rational::from_integer(1.into()), term),
            };
            let idx: usize = unit
                .strip_prefix('e')
                .and_then(|k| k.parse().ok())
                .filter(|&k| (1..=s).contains(&k))
                .ok_or_else(|| Error::input(format!("bad basis vector {unit:?} (expected e1..e{s})")))?;
            v.0[idx - 1] += coeff;
        }
        return Ok(v);
    }
    let coords = t.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    if coords.len() != s {
        return Err(Error::input(format!("vector {t:?} has {} coordinates, expected {s}", coords.len())));
    }
    Ok(Direction::new(coords))
}

/// Vectors separated by `;`; a piece made only of basis names such as
/// `e2,e3` contributes one vector per name.
pub fn parse_collection(text: &str, s: usize) -> Result<Vec<Direction>> {
    let mut out = Vec::new();
    for piece in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let names: Vec<&str> = piece.split(',').map(str::trim).collect();
        if names.iter().all(|n| n.contains('e')) {
            for n in names {
                out.push(parse_vector(n, s)?);
            }
        } else {
            out.push(parse_vector(piece, s)?);
        }
    }
    if out.is_empty() {
        return Err(Error::input("empty collection"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("e2", 3).unwrap(), Direction::from_ints(&[0, 1, 0]));
        assert_eq!(
            parse_vector("2*e1+1/2*e3", 3).unwrap(),
            Direction::new(vec![int(2), int(0), rat(1, 2)])
        );
        assert_eq!(parse_vector("1,1/2", 2).unwrap(), Direction::new(vec![int(1), rat(1, 2)]));
        assert!(parse_vector("e4", 3).is_err());
        assert!(parse_vector("1/0,1", 2).is_err());
        let c = parse_collection("e2,e3", 3).unwrap();
        assert_eq!(c.len(), 2);
        let c = parse_collection("1,1,0;0,1,1", 3).unwrap();
        assert_eq!(c[1], Direction::from_ints(&[0, 1, 1]));
    }

    #[test]
    fn schema_errors_name_the_field() {
        let text = r#"{"format":1,"kind":"tensor","nvars":2,"degree":2,
            "terms":[{"exponent":[1,1],"coeff":"1"},{"exponent":[1,0],"coeff":"1"}]}"#;
        match parse_model(text, "x") {
            Err(Error::Schema { location, .. }) => assert_eq!(location, "terms[1].exponent"),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"format":1,"kind":"tensor","nvars":2,"degree":2,
            "terms":[{"exponent":[1,1],"coeff":"1/0"}]}"#;
        assert!(matches!(parse_model(bad, "x"), Err(Error::Schema { .. })));
        let unknown = r#"{"format":1,"kind":"tensor","colour":"red"}"#;
        assert!(matches!(parse_model(unknown, "x"), Err(Error::Schema { .. })));
    }

    #[test]
    fn kinds_compile() {
        let squares = r#"{"format":1,"kind":"polytopes","bodies":[
            {"vertices":[[0,0],[1,0],[0,1],[1,1]]},{"vertices":[[0,0],[1,0],[0,1],[1,1]]}]}"#;
        let m = parse_model(squares, "squares").unwrap();
        let expected = VolumePolynomial::from_int_terms(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]).unwrap();
        assert_eq!(m.f, expected);
        let u34 = r#"{"format":1,"kind":"matroid","matroid":{"uniform":[3,4]},
            "divisors":[{"kind":"alpha"},{"kind":"beta"}]}"#;
        let m = parse_model(u34, "u34").unwrap();
        let s = m.f.sequence_sk(&Direction::unit(2, 0), &Direction::unit(2, 1)).unwrap();
        assert_eq!(s.values, vec![int(3), int(3), int(1)]);
    }
}
