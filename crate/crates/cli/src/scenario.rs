//! Scenario file schema and its conversion into core inputs.

use coincidence_core::decider::{JiangType, Scenario, SourceFlags, TargetFlags};
use coincidence_core::lefschetz::{
    class_from_facts, multi_class_torus, sphere_class, ClassValue, CohomologyFact, FactContext,
    FactStatement, MapDecl, TorusMapModel,
};
use coincidence_core::solver::{parse_rational, AffineTorusMap, Rational};
use coincidence_core::IntegerMatrix;
use serde::{Deserialize, Serialize};

use crate::failure::Failure;

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub model: Model,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sphere: Option<SpherePayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facts: Option<FactsPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decider: Option<DeciderBlock>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    TorusAffine,
    SphereDegrees,
    Facts,
}

impl Model {
    fn payload_key(self) -> &'static str {
        match self {
            Model::TorusAffine => "torus",
            Model::SphereDegrees => "sphere",
            Model::Facts => "facts",
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TorusPayload {
    pub maps: Vec<TorusMapEntry>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TorusMapEntry {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Vec<Scalar>>,
}

/// An integer or a `"p/q"` string.
#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpherePayload {
    pub n: usize,
    pub k: usize,
    pub hat_degrees: Vec<i64>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FactsPayload {
    pub source: String,
    pub target: String,
    pub n: usize,
    pub maps: Vec<MapEntry>,
    #[serde(default)]
    pub statements: Vec<FactEntry>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub id: String,
    #[serde(default)]
    pub constant: bool,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FactEntry {
    pub kind: FactKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<[usize; 2]>,
    pub justification: String,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactKind {
    PullbackVanishes,
    CohomologyVanishes,
    PairClassZero,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DeciderBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_source: Option<usize>,
    pub source: SourceBlock,
    pub target: TargetBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction_known_zero: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub remarks: Vec<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SourceBlock {
    pub closed: bool,
    pub connected: bool,
    pub oriented: bool,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TargetBlock {
    pub closed: bool,
    pub connected: bool,
    pub orientable: bool,
    pub simply_connected: bool,
    #[serde(default = "jiang_none")]
    pub jiang_type: String,
    #[serde(default)]
    pub aspherical: bool,
}

fn jiang_none() -> String {
    JiangType::None.as_str().to_string()
}

/// Shape facts that the decider block must agree with.
struct Shape {
    k: usize,
    n: usize,
    dim_source: Option<usize>,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Failure::schema(e.to_string()))?;
        let present = [
            (Model::TorusAffine, file.torus.is_some()),
            (Model::SphereDegrees, file.sphere.is_some()),
            (Model::Facts, file.facts.is_some()),
        ];
        for (model, is_present) in present {
            if model == file.model && !is_present {
                return Err(Failure::schema(format!(
                    "{}: required for model {:?}",
                    model.payload_key(),
                    serde_json::to_value(file.model).unwrap().as_str().unwrap()
                )));
            }
            if model != file.model && is_present {
                return Err(Failure::schema(format!(
                    "{}: not allowed for model {:?}",
                    model.payload_key(),
                    serde_json::to_value(file.model).unwrap().as_str().unwrap()
                )));
            }
        }
        Ok(file)
    }

    pub fn torus_maps(&self) -> Result<Vec<AffineTorusMap>, Failure> {
        let payload = self
            .torus
            .as_ref()
            .ok_or_else(|| Failure::schema("model: this command needs model \"torus-affine\""))?;
        if payload.maps.len() < 2 {
            return Err(Failure::schema(format!(
                "torus.maps: need at least 2 maps, found {}",
                payload.maps.len()
            )));
        }
        let mut shape: Option<(usize, usize)> = None;
        payload
            .maps
            .iter()
            .enumerate()
            .map(|(i, entry)| {
                let field = format!("torus.maps[{i}]");
                let matrix = IntegerMatrix::from_rows(&entry.matrix)
                    .map_err(|e| Failure::core(&format!("{field}.matrix"), e))?;
                let dims = (matrix.rows(), matrix.cols());
                match shape {
                    None => shape = Some(dims),
                    Some(expected) if expected != dims => {
                        return Err(Failure::dimension(format!(
                            "{field}.matrix: shape {}x{} differs from torus.maps[0] ({}x{})",
                            dims.0, dims.1, expected.0, expected.1
                        )))
                    }
                    Some(_) => {}
                }
                let translation = match &entry.translation {
                    None => vec![Rational::from_integer(0); matrix.rows()],
                    Some(t) => t
                        .iter()
                        .enumerate()
                        .map(|(j, s)| scalar(s).map_err(|e| Failure::core(&format!("{field}.translation[{j}]"), e)))
                        .collect::<Result<_, _>>()?,
                };
                AffineTorusMap::new(matrix, translation).map_err(|e| Failure::core(&format!("{field}.translation"), e))
            })
            .collect()
    }

    pub fn class(&self) -> Result<ClassValue, Failure> {
        match self.model {
            Model::TorusAffine => {
                let maps = self.torus_maps()?;
                let model = TorusMapModel::from_affine(&maps).map_err(|e| Failure::core("torus.maps", e))?;
                multi_class_torus(&model).map_err(|e| Failure::core("torus.maps", e))
            }
            Model::SphereDegrees => {
                let p = self.sphere.as_ref().expect("validated in parse");
                sphere_class(p.n, p.k, &p.hat_degrees).map_err(|e| Failure::core("sphere", e))
            }
            Model::Facts => {
                let p = self.facts.as_ref().expect("validated in parse");
                let ctx = FactContext {
                    source: p.source.clone(),
                    target: p.target.clone(),
                    n: p.n,
                    maps: p
                        .maps
                        .iter()
                        .map(|m| MapDecl { id: m.id.clone(), constant: m.constant })
                        .collect(),
                };
                let facts = p
                    .statements
                    .iter()
                    .enumerate()
                    .map(|(i, f)| fact(f, &format!("facts.statements[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                class_from_facts(&ctx, &facts).map_err(|e| Failure::core("facts", e))
            }
        }
    }

    fn shape(&self) -> Result<Shape, Failure> {
        Ok(match self.model {
            Model::TorusAffine => {
                let p = self.torus.as_ref().expect("validated in parse");
                let first = p.maps.first().and_then(|m| m.matrix.first());
                Shape {
                    k: p.maps.len(),
                    n: p.maps.first().map_or(0, |m| m.matrix.len()),
                    dim_source: first.map(|row| row.len()),
                }
            }
            Model::SphereDegrees => {
                let p = self.sphere.as_ref().expect("validated in parse");
                Shape { k: p.k, n: p.n, dim_source: None }
            }
            Model::Facts => {
                let p = self.facts.as_ref().expect("validated in parse");
                Shape { k: p.maps.len(), n: p.n, dim_source: None }
            }
        })
    }

    pub fn scenario(&self, class: ClassValue) -> Result<Scenario, Failure> {
        let block = self
            .decider
            .as_ref()
            .ok_or_else(|| Failure::schema("decider: block is required for the decide command"))?;
        let shape = self.shape()?;
        let agree = |field: &str, given: Option<usize>, derived: usize| match given {
            Some(v) if v != derived => Err(Failure::dimension(format!(
                "decider.{field}: {v} disagrees with the model value {derived}"
            ))),
            _ => Ok(derived),
        };
        let k = agree("k", block.k, shape.k)?;
        let n = agree("n", block.n, shape.n)?;
        let dim_source = match (block.dim_source, shape.dim_source) {
            (Some(v), Some(d)) => agree("dim_source", Some(v), d)?,
            (None, Some(d)) => d,
            (Some(v), None) => v,
            (None, None) => {
                return Err(Failure::schema("decider.dim_source: required for this model"));
            }
        };
        if k < 2 || n < 1 || dim_source < 1 {
            return Err(Failure::schema(format!(
                "decider: need k >= 2, n >= 1, dim_source >= 1 (got k={k}, n={n}, dim_source={dim_source})"
            )));
        }
        let jiang_type = JiangType::parse(&block.target.jiang_type).ok_or_else(|| {
            Failure::schema(format!(
                "decider.target.jiang_type: unknown value {:?}",
                block.target.jiang_type
            ))
        })?;
        Ok(Scenario {
            k,
            n,
            dim_source,
            source: SourceFlags {
                closed: block.source.closed,
                connected: block.source.connected,
                oriented: block.source.oriented,
            },
            target: TargetFlags {
                closed: block.target.closed,
                connected: block.target.connected,
                orientable: block.target.orientable,
                simply_connected: block.target.simply_connected,
                jiang_type,
                aspherical: block.target.aspherical,
            },
            class,
            obstruction_known_zero: block.obstruction_known_zero,
            remarks: block.remarks.clone(),
        })
    }
}

fn scalar(s: &Scalar) -> coincidence_core::Result<Rational> {
    match s {
        Scalar::Int(v) => Ok(Rational::from_integer(*v)),
        Scalar::Text(t) => parse_rational(t),
    }
}

fn fact(f: &FactEntry, field: &str) -> Result<CohomologyFact, Failure> {
    let need = |name: &str| Failure::schema(format!("{field}.{name}: required for this kind"));
    let forbid = |name: &str, present: bool| {
        if present {
            Err(Failure::schema(format!("{field}.{name}: not used by this kind")))
        } else {
            Ok(())
        }
    };
    let statement = match f.kind {
        FactKind::PullbackVanishes => {
            forbid("space", f.space.is_some())?;
            forbid("degree", f.degree.is_some())?;
            forbid("pair", f.pair.is_some())?;
            FactStatement::PullbackOfFundamentalClassVanishes {
                map: f.map.clone().ok_or_else(|| need("map"))?,
            }
        }
        FactKind::CohomologyVanishes => {
            forbid("map", f.map.is_some())?;
            forbid("pair", f.pair.is_some())?;
            FactStatement::CohomologyGroupVanishes {
                space: f.space.clone().ok_or_else(|| need("space"))?,
                degree: f.degree.ok_or_else(|| need("degree"))?,
            }
        }
        FactKind::PairClassZero => {
            forbid("map", f.map.is_some())?;
            forbid("space", f.space.is_some())?;
            forbid("degree", f.degree.is_some())?;
            let [i, j] = f.pair.ok_or_else(|| need("pair"))?;
            FactStatement::PairClassZero { i, j }
        }
    };
    Ok(CohomologyFact { statement, justification: f.justification.clone() })
}
