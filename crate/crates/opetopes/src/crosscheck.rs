//! Cross-validation of the graph construction against the slice tower: the
//! tree <-> graph translation, and per-frame count comparison between the
//! two enumerations.

use crate::error::{Error, Result};
use crate::graph::{arrow_form, Port, TreeView};
use crate::opetope::{enumerate_opetopes, Bounds, Frame, Opetope, OpetopeMorphism};
use crate::slice::{
    Feed, MultiArrowTree, ReindexMor, SliceArrow, SliceObj, SymMulticat, TreeNode, Wire,
};
use serde::Serialize;

/// Translate an opetope of dimension >= 1 to the corresponding slice arrow:
/// the arrow sits one level below the dimension.
pub fn opetope_to_arrow(x: &Opetope) -> Result<SliceArrow> {
    match x {
        Opetope::Point => Err(Error::DimMismatch(
            "the point translates to an object, not an arrow".to_string(),
        )),
        Opetope::Arrow => Ok(SliceArrow::Unit),
        Opetope::Cell(c) => {
            let arrow = arrow_form(&c.theta.underlying)?;
            let view = TreeView::new(&arrow).expect("configurations are tree shaped");
            let tw = arrow.twisted();
            let m = c.inputs.len();
            let n = c.output.arity();

            // Feed and edge morphism for each plus port, read off the mates.
            let mut slots: Vec<Vec<Option<Wire>>> = c
                .inputs
                .iter()
                .map(|i| vec![None; i.arity()])
                .collect();
            let mut root: Option<Wire> = None;
            for (p, (a, b)) in arrow.pairs().into_iter().enumerate() {
                let (neg, pos) = if tw[a].variance == crate::shape::Variance::Minus {
                    (a, b)
                } else {
                    (b, a)
                };
                let mor = morphism_to_reindex(&c.theta.labels[p]);
                let feed = match view.ports[neg] {
                    Port::NodeOutput { node } => Feed::Node(node),
                    Port::BoundaryInput { slot } => Feed::Leaf(slot),
                    _ => unreachable!("minus ports are node outputs or boundary inputs"),
                };
                match view.ports[pos] {
                    Port::NodeInput { node, slot } => {
                        slots[node][slot] = Some(Wire { from: feed, mor });
                    }
                    Port::BoundaryOutput => root = Some(Wire { from: feed, mor }),
                    _ => unreachable!("plus ports are node inputs or the boundary output"),
                }
            }

            let nodes = c
                .inputs
                .iter()
                .zip(slots)
                .map(|(input, ws)| {
                    Ok(TreeNode {
                        label: opetope_to_arrow(input)?,
                        slots: ws.into_iter().map(|w| w.expect("slot wired")).collect(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let output_cell = match &c.output {
                Opetope::Arrow => None,
                Opetope::Cell(oc) => Some(oc),
                Opetope::Point => unreachable!("outputs have dimension >= 1"),
            };
            let leaf_objects = match output_cell {
                None => vec![SliceObj::Terminal; n],
                Some(oc) => oc
                    .inputs
                    .iter()
                    .map(|i| Ok(SliceObj::Arrow(Box::new(opetope_to_arrow(i)?))))
                    .collect::<Result<Vec<_>>>()?,
            };
            let target_object = match output_cell {
                None => SliceObj::Terminal,
                Some(oc) => SliceObj::Arrow(Box::new(opetope_to_arrow(&oc.output)?)),
            };
            let t = MultiArrowTree {
                level: x.dim() - 1,
                nodes,
                root: root.expect("boundary output wired"),
                leaf_objects,
                target_object,
            };
            let _ = m;
            Ok(SliceArrow::Tree(Box::new(t)))
        }
    }
}

/// Translate an opetope morphism to a reindexing.
pub fn morphism_to_reindex(m: &OpetopeMorphism) -> ReindexMor {
    match m {
        OpetopeMorphism::Trivial(_) => ReindexMor::Trivial,
        OpetopeMorphism::Frame(f) => ReindexMor::Reindex {
            sigma: f.sigma.clone(),
            inputs: f.inputs.iter().map(morphism_to_reindex).collect(),
            output: Box::new(morphism_to_reindex(&f.output)),
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameReport {
    pub frame: String,
    pub ladder_count: usize,
    pub oracle_count: usize,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceReport {
    pub dim: usize,
    pub frames: Vec<FrameReport>,
    pub status: String,
}

impl CorrespondenceReport {
    pub fn is_match(&self) -> bool {
        self.status == "match"
    }
}

fn frame_text(frame: &Frame) -> String {
    let arities: Vec<String> = frame
        .inputs
        .iter()
        .map(|i| i.arity().to_string())
        .collect();
    format!("dim {}: ({})->{}", frame.dim(), arities.join(","), frame.output.arity())
}

/// Count agreement on one frame: the ladder enumeration translated tree by
/// tree must coincide with the oracle enumeration.
pub fn check_frame(frame: &Frame, bounds: &Bounds) -> Result<FrameReport> {
    let ladder = enumerate_opetopes(frame, bounds)?;
    let mut translated = ladder
        .iter()
        .map(opetope_to_arrow)
        .collect::<Result<Vec<_>>>()?;

    let q = SymMulticat {
        level: frame.dim() - 1,
    };
    let srcs = frame
        .inputs
        .iter()
        .map(opetope_to_arrow)
        .collect::<Result<Vec<_>>>()?;
    let tgt = opetope_to_arrow(&frame.output)?;
    let mut oracle = q.arrows(&srcs, &tgt)?;

    // Both sides must produce literally the same set of configurations.
    translated.sort();
    oracle.sort();
    let matched = translated == oracle;
    Ok(FrameReport {
        frame: frame_text(frame),
        ladder_count: translated.len(),
        oracle_count: oracle.len(),
        matched,
    })
}

/// All frames of the given dimension within the leaf bound, built over the
/// bounded enumeration of the dimension below.
fn frames_within(dim: usize, bounds: &Bounds) -> Result<Vec<Frame>> {
    let mut out = Vec::new();
    match dim {
        0 | 1 => {}
        2 => {
            for m in 0..=bounds.max_leaves.saturating_sub(1) {
                out.push(Frame {
                    inputs: vec![Opetope::Arrow; m],
                    output: Opetope::Arrow,
                });
            }
        }
        _ => {
            let below = opetopes_within(dim - 1, bounds)?;
            // Input lists: every tuple of cells whose arities fit the bound.
            let mut stack: Vec<(Vec<Opetope>, usize)> = vec![(Vec::new(), 0)];
            let mut tuples = Vec::new();
            while let Some((tuple, leaves)) = stack.pop() {
                tuples.push(tuple.clone());
                for b in &below {
                    let l = leaves + b.arity();
                    if l <= bounds.max_leaves && tuple.len() < bounds.max_leaves {
                        let mut t = tuple.clone();
                        t.push(b.clone());
                        stack.push((t, l));
                    }
                }
            }
            for tuple in tuples {
                let total: usize = tuple.iter().map(|i| i.arity()).sum();
                let m = tuple.len();
                if total + 1 < m {
                    continue;
                }
                let n = total + 1 - m;
                for output in &below {
                    if output.arity() != n {
                        continue;
                    }
                    let frame = Frame {
                        inputs: tuple.clone(),
                        output: output.clone(),
                    };
                    if frame.total_leaves() <= bounds.max_leaves {
                        out.push(frame);
                    }
                }
            }
            out.sort_by_key(frame_text);
            out.dedup_by_key(|f| frame_text(f));
        }
    }
    Ok(out)
}

/// Bounded enumeration of all opetopes of a dimension, across all frames in
/// bounds.
pub fn opetopes_within(dim: usize, bounds: &Bounds) -> Result<Vec<Opetope>> {
    match dim {
        0 => Ok(vec![Opetope::Point]),
        1 => Ok(vec![Opetope::Arrow]),
        _ => {
            let mut out = Vec::new();
            for frame in frames_within(dim, bounds)? {
                out.extend(enumerate_opetopes(&frame, bounds)?);
            }
            Ok(out)
        }
    }
}

/// Per-frame count comparison at one dimension. Dimensions 0 and 1 are the
/// singleton base of the tower on both sides.
pub fn check_correspondence(dim: usize, bounds: &Bounds) -> Result<CorrespondenceReport> {
    let mut frames_reports = Vec::new();
    match dim {
        0 | 1 => {
            frames_reports.push(FrameReport {
                frame: format!("dim {dim}: singleton"),
                ladder_count: 1,
                oracle_count: 1,
                matched: true,
            });
        }
        _ => {
            for frame in frames_within(dim, bounds)? {
                frames_reports.push(check_frame(&frame, bounds)?);
            }
        }
    }
    let ok = frames_reports.iter().all(|f| f.matched);
    Ok(CorrespondenceReport {
        dim,
        frames: frames_reports,
        status: if ok { "match" } else { "mismatch" }.to_string(),
    })
}
