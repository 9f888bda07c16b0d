//! JSON formats: graphs as `{dom, cod, pairs}` over the deterministic
//! twisted-variable ordering, labelled graphs with a `labels` list, and
//! opetopes as recursive `{dim, inputs, output, theta}` objects. Loading an
//! opetope re-runs full validation.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labelled::{LabelledGraph, LabelledShape};
use crate::opetope::{expanded_frame, Frame, FrameMorphismData, Opetope, OpetopeMorphism, Theta};
use crate::shape::{parse_shape, print_shape};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub dom: String,
    pub cod: String,
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelJson {
    pub pair: usize,
    pub morphism: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaJson {
    pub dom: String,
    pub cod: String,
    pub pairs: Vec<[usize; 2]>,
    pub labels: Vec<LabelJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpetopeJson {
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<OpetopeJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Box<OpetopeJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameJson {
    pub inputs: Vec<OpetopeJson>,
    pub output: OpetopeJson,
}

pub fn graph_to_json(g: &Graph) -> GraphJson {
    GraphJson {
        dom: print_shape(g.dom()),
        cod: print_shape(g.cod()),
        pairs: g.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
    }
}

pub fn graph_from_json(j: &GraphJson) -> Result<Graph> {
    let dom = parse_shape(&j.dom)?;
    let cod = parse_shape(&j.cod)?;
    let pairs: Vec<(usize, usize)> = j.pairs.iter().map(|[a, b]| (*a, *b)).collect();
    Graph::make(dom, cod, &pairs)
}

fn morphism_to_json(m: &OpetopeMorphism) -> serde_json::Value {
    match m {
        OpetopeMorphism::Trivial(_) => serde_json::Value::String("id".to_string()),
        OpetopeMorphism::Frame(f) => serde_json::json!({
            "sigma": f.sigma,
            "inputs": f.inputs.iter().map(morphism_to_json).collect::<Vec<_>>(),
            "output": morphism_to_json(&f.output),
        }),
    }
}

/// Parse a morphism between two given opetopes.
fn morphism_from_json(
    v: &serde_json::Value,
    source: &Opetope,
    target: &Opetope,
) -> Result<OpetopeMorphism> {
    match v {
        serde_json::Value::String(s) if s == "id" => {
            if source != target {
                return Err(Error::TypeMismatch(
                    "\"id\" needs equal endpoints".to_string(),
                ));
            }
            Ok(OpetopeMorphism::identity(source))
        }
        serde_json::Value::Object(map) => {
            let (sc, tc) = match (source.cell(), target.cell()) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Error::TypeMismatch(
                        "structured morphisms need cell endpoints".to_string(),
                    ))
                }
            };
            let sigma: Vec<usize> = map
                .get("sigma")
                .and_then(|s| serde_json::from_value(s.clone()).ok())
                .ok_or_else(|| Error::TypeMismatch("morphism needs a sigma list".to_string()))?;
            let inputs_json = map
                .get("inputs")
                .and_then(|s| s.as_array())
                .ok_or_else(|| Error::TypeMismatch("morphism needs inputs".to_string()))?;
            if sigma.len() != sc.inputs.len() || inputs_json.len() != sigma.len() {
                return Err(Error::ArityMismatch {
                    expected: sc.inputs.len(),
                    got: sigma.len(),
                });
            }
            let mut inputs = Vec::new();
            for (i, ij) in inputs_json.iter().enumerate() {
                let src = tc.inputs.get(i).ok_or_else(|| Error::ArityMismatch {
                    expected: sigma.len(),
                    got: tc.inputs.len(),
                })?;
                let tgt = sc.inputs.get(sigma[i]).ok_or_else(|| {
                    Error::TypeMismatch(format!("sigma entry {} out of range", sigma[i]))
                })?;
                inputs.push(morphism_from_json(ij, src, tgt)?);
            }
            let output_json = map
                .get("output")
                .ok_or_else(|| Error::TypeMismatch("morphism needs an output".to_string()))?;
            let output = morphism_from_json(output_json, &sc.output, &tc.output)?;
            Ok(OpetopeMorphism::Frame(Box::new(FrameMorphismData {
                source: source.clone(),
                target: target.clone(),
                sigma,
                inputs,
                output,
            })))
        }
        _ => Err(Error::TypeMismatch(
            "a morphism is \"id\" or an object".to_string(),
        )),
    }
}

pub fn theta_to_json(t: &Theta) -> ThetaJson {
    ThetaJson {
        dom: print_shape(&t.dom.shape),
        cod: print_shape(&t.cod.shape),
        pairs: t.underlying.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        labels: t
            .labels
            .iter()
            .enumerate()
            .map(|(pair, m)| LabelJson {
                pair,
                morphism: morphism_to_json(m),
            })
            .collect(),
    }
}

pub fn opetope_to_json(x: &Opetope) -> OpetopeJson {
    match x {
        Opetope::Point => OpetopeJson {
            dim: 0,
            inputs: None,
            output: None,
            theta: None,
        },
        Opetope::Arrow => OpetopeJson {
            dim: 1,
            inputs: None,
            output: None,
            theta: None,
        },
        Opetope::Cell(c) => OpetopeJson {
            dim: x.dim(),
            inputs: Some(c.inputs.iter().map(opetope_to_json).collect()),
            output: Some(Box::new(opetope_to_json(&c.output))),
            theta: Some(theta_to_json(&c.theta)),
        },
    }
}

/// Rebuild and fully validate an opetope.
pub fn opetope_from_json(j: &OpetopeJson) -> Result<Opetope> {
    match j.dim {
        0 => Ok(Opetope::Point),
        1 => Ok(Opetope::Arrow),
        _ => {
            let inputs = j
                .inputs
                .as_ref()
                .ok_or_else(|| Error::Incomplete("cells need inputs".to_string()))?
                .iter()
                .map(opetope_from_json)
                .collect::<Result<Vec<_>>>()?;
            let output = opetope_from_json(
                j.output
                    .as_ref()
                    .ok_or_else(|| Error::Incomplete("cells need an output".to_string()))?,
            )?;
            let tj = j
                .theta
                .as_ref()
                .ok_or_else(|| Error::Incomplete("cells need a theta".to_string()))?;
            let theta = theta_from_json(tj, &inputs, &output)?;
            Opetope::make(inputs, output, theta)
        }
    }
}

/// Rebuild a configuration in the context of its frame: leaf labels come
/// from the frame expansion, edge labels are parsed against the mate
/// endpoints.
pub fn theta_from_json(j: &ThetaJson, inputs: &[Opetope], output: &Opetope) -> Result<Theta> {
    let dom_shape = parse_shape(&j.dom)?;
    if dom_shape != crate::shape::ShapeTerm::Unit {
        return Err(Error::ShapeMismatch(
            "configuration domain must be I".to_string(),
        ));
    }
    let cod_shape = parse_shape(&j.cod)?;
    let cod = expanded_frame(inputs, output)?;
    if cod.shape != cod_shape {
        return Err(Error::ShapeMismatch(format!(
            "configuration codomain {} does not match the frame expansion {}",
            cod_shape, cod.shape
        )));
    }
    let pairs: Vec<(usize, usize)> = j.pairs.iter().map(|[a, b]| (*a, *b)).collect();
    let underlying = Graph::make(dom_shape, cod_shape, &pairs)?;

    let count = underlying.pairs().len();
    if j.labels.len() != count {
        return Err(Error::ArityMismatch {
            expected: count,
            got: j.labels.len(),
        });
    }
    // Parse labels against each pair's endpoint cells.
    let probe: Theta = LabelledGraph {
        dom: LabelledShape::unit(),
        cod: cod.clone(),
        underlying: underlying.clone(),
        labels: vec![OpetopeMorphism::Trivial(Opetope::Point); count],
    };
    let mut labels = vec![None; count];
    for lj in &j.labels {
        if lj.pair >= count {
            return Err(Error::Incomplete(format!("label for pair {} out of range", lj.pair)));
        }
        let (neg, pos) = probe.endpoint_labels(lj.pair);
        labels[lj.pair] = Some(morphism_from_json(&lj.morphism, &neg.clone(), &pos.clone())?);
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(p, l)| l.ok_or_else(|| Error::Incomplete(format!("pair {p} has no label"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(LabelledGraph {
        dom: LabelledShape::unit(),
        cod,
        underlying,
        labels,
    })
}

pub fn frame_from_json(j: &FrameJson) -> Result<Frame> {
    Ok(Frame {
        inputs: j.inputs.iter().map(opetope_from_json).collect::<Result<Vec<_>>>()?,
        output: opetope_from_json(&j.output)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opetope::chain;
    use crate::samples::{sample_3opetope, sample_4opetope};

    #[test]
    fn graph_round_trip() {
        let g = Graph::identity(&crate::shape::ShapeTerm::x(2));
        let j = graph_to_json(&g);
        assert_eq!(graph_from_json(&j).unwrap(), g);
    }

    #[test]
    fn opetope_round_trips() {
        for op in [chain(0), chain(3), sample_3opetope(), sample_4opetope().unwrap()] {
            let j = opetope_to_json(&op);
            let text = serde_json::to_string(&j).unwrap();
            let back: OpetopeJson = serde_json::from_str(&text).unwrap();
            assert_eq!(opetope_from_json(&back).unwrap(), op);
        }
    }

    #[test]
    fn serialization_is_deterministic() {
        let op = sample_3opetope();
        let a = serde_json::to_string(&opetope_to_json(&op)).unwrap();
        let b = serde_json::to_string(&opetope_to_json(&op)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tampered_opetope_fails_validation() {
        let op = sample_3opetope();
        let mut j = opetope_to_json(&op);
        // Swap the output for a wrong-arity chain.
        j.output = Some(Box::new(opetope_to_json(&chain(3))));
        assert!(opetope_from_json(&j).is_err());
    }
}
