//! Worked sample opetopes used by the test suites and the command line
//! demos: a 3-opetope pasting a 3-ary and a 2-ary cell into a 4-ary one,
//! and a 4-opetope over it.

use crate::error::Result;
use crate::graph::{Graph, Port, TreeFrameShape};
use crate::labelled::{LabelledGraph, LabelledShape};
use crate::opetope::{
    chain, chain_with_positions, condition_b_composite, expanded_frame, tree_view_for, Opetope,
    OpetopeMorphism, Theta,
};

/// Wiring description for a configuration over a frame: where each node
/// input comes from, where each node output goes.
#[derive(Debug, Clone)]
pub struct Wiring {
    /// `(node, slot, feed)`: feed is `Ok(other node)` for that node's
    /// output, `Err(boundary slot)` for a boundary input.
    pub slots: Vec<(usize, usize, std::result::Result<usize, usize>)>,
    /// The node whose output reaches the boundary output, if any.
    pub root: Option<usize>,
}

/// Build a configuration graph over the given frame from a wiring. Labels
/// are given in wiring order (the slot list, then the root); `None` puts
/// identities everywhere.
pub fn theta_from_wiring(
    inputs: &[Opetope],
    output: &Opetope,
    wiring: &Wiring,
    labels: Option<Vec<OpetopeMorphism>>,
) -> Result<Theta> {
    let shape = TreeFrameShape {
        node_arities: inputs.iter().map(|i| i.arity()).collect(),
        out_arity: output.arity(),
    };
    let view = tree_view_for(&shape);
    let mut pairs = Vec::new();
    for &(node, slot, feed) in &wiring.slots {
        let a = view.index_of(Port::NodeInput { node, slot });
        let b = match feed {
            Ok(other) => view.index_of(Port::NodeOutput { node: other }),
            Err(bslot) => view.index_of(Port::BoundaryInput { slot: bslot }),
        };
        pairs.push((a.min(b), a.max(b)));
    }
    match wiring.root {
        Some(node) => {
            let a = view.index_of(Port::NodeOutput { node });
            let b = view.index_of(Port::BoundaryOutput);
            pairs.push((a.min(b), a.max(b)));
        }
        None => {
            let a = view.index_of(Port::BoundaryInput { slot: 0 });
            let b = view.index_of(Port::BoundaryOutput);
            pairs.push((a.min(b), a.max(b)));
        }
    }
    let g = Graph::make(shape.dom_shape(), shape.cod_shape(), &pairs)?.curry();
    let cod = expanded_frame(inputs, output)?;

    let canonical = g.pairs();
    let labels = match labels {
        Some(ls) => {
            if ls.len() != pairs.len() {
                return Err(crate::error::Error::ArityMismatch {
                    expected: pairs.len(),
                    got: ls.len(),
                });
            }
            // Reorder from wiring order to canonical pair order.
            let mut keyed: Vec<((usize, usize), OpetopeMorphism)> =
                pairs.iter().copied().zip(ls).collect();
            keyed.sort_by_key(|(p, _)| *p);
            debug_assert_eq!(
                keyed.iter().map(|(p, _)| *p).collect::<Vec<_>>(),
                canonical
            );
            keyed.into_iter().map(|(_, m)| m).collect()
        }
        None => {
            let probe = LabelledGraph {
                dom: LabelledShape::unit(),
                cod: cod.clone(),
                underlying: g.clone(),
                labels: vec![OpetopeMorphism::Trivial(Opetope::Point); canonical.len()],
            };
            (0..canonical.len())
                .map(|p| {
                    let (neg, _) = probe.endpoint_labels(p);
                    OpetopeMorphism::identity(neg)
                })
                .collect()
        }
    };
    Ok(LabelledGraph {
        dom: LabelledShape::unit(),
        cod,
        underlying: g,
        labels,
    })
}

/// The wiring of the sample 3-opetope: the 2-ary cell's output feeds the
/// 3-ary cell's first input; boundary inputs 1 and 4 feed the 2-ary cell,
/// 2 and 3 the 3-ary cell; the 3-ary cell's output is the boundary output.
pub fn sample_wiring() -> Wiring {
    Wiring {
        slots: vec![
            (0, 0, Ok(1)),
            (0, 1, Err(1)),
            (0, 2, Err(2)),
            (1, 0, Err(0)),
            (1, 1, Err(3)),
        ],
        root: Some(0),
    }
}

/// Input 2-opetopes of the sample 3-opetope: a 3-ary chain in listing
/// order and a 2-ary chain with its listing reversed.
pub fn sample_inputs() -> Vec<Opetope> {
    vec![chain(3), chain_with_positions(&[1, 0])]
}

/// Output of the sample 3-opetope: the 4-ary chain with positions
/// (4, 1, 2, 3), which is what the wiring composes to.
pub fn sample_output() -> Opetope {
    chain_with_positions(&[3, 0, 1, 2])
}

/// The sample 3-opetope itself.
pub fn sample_3opetope() -> Opetope {
    let inputs = sample_inputs();
    let output = sample_output();
    let theta = theta_from_wiring(&inputs, &output, &sample_wiring(), None)
        .expect("sample wiring is a valid configuration");
    Opetope::make(inputs, output, theta).expect("sample 3-opetope validates")
}

/// A 4-opetope whose two input 3-opetopes have frames pasting (3,2)-ary
/// cells into a 4-ary one and (2,2)-ary cells into a 3-ary one, with output
/// frame pasting three 2-ary cells into a 4-ary one.
pub fn sample_4opetope() -> Result<Opetope> {
    // theta_1: inputs (3-ary, 2-ary chains), output the composite 4-ary.
    let theta_1 = sample_3opetope();

    // theta_2: inputs (2-ary, 2-ary chains) chained in listed order:
    // composite is the identity-ordered 3-ary chain.
    let t2_inputs = vec![chain(2), chain(2)];
    let t2_wiring = Wiring {
        slots: vec![(0, 0, Ok(1)), (0, 1, Err(2)), (1, 0, Err(0)), (1, 1, Err(1))],
        root: Some(0),
    };
    let t2_output = chain(3);
    let t2 = theta_from_wiring(&t2_inputs, &t2_output, &t2_wiring, None)?;
    let theta_2 = Opetope::make(t2_inputs, t2_output, t2)?;

    // The 4-cell configuration: theta_2's output (3-ary) feeds theta_1's
    // first input (the 3-ary slot); the remaining 2-ary slots read off the
    // boundary in order.
    let inputs = vec![theta_1.clone(), theta_2.clone()];
    let gamma_wiring = Wiring {
        slots: vec![(0, 0, Ok(1)), (0, 1, Err(0)), (1, 0, Err(1)), (1, 1, Err(2))],
        root: Some(0),
    };

    // Output 3-opetope: frame read off the configuration boundary, with the
    // configuration's condition-B composite as its own configuration.
    let out_inputs = vec![
        theta_1.cell().unwrap().inputs[1].clone(),
        theta_2.cell().unwrap().inputs[0].clone(),
        theta_2.cell().unwrap().inputs[1].clone(),
    ];
    let out_output = theta_1.cell().unwrap().output.clone();
    let gamma_probe = theta_from_wiring(&inputs, &make_unchecked(&out_inputs, &out_output), &gamma_wiring, None)?;
    let composite = condition_b_composite(&inputs, &gamma_probe)?;
    let output = Opetope::make(out_inputs, out_output, composite)?;

    let gamma = theta_from_wiring(&inputs, &output, &gamma_wiring, None)?;
    Opetope::make(inputs, output, gamma)
}

/// As [`sample_4opetope`], but with a genuinely nontrivial permutation on
/// the first boundary edge: the boundary 2-ary cell is the identity chain
/// while the consumed input is the reversed one, so the edge carries the
/// transposition.
pub fn sample_4opetope_with_permutation() -> Result<Opetope> {
    use crate::opetope::FrameMorphismData;
    let theta_1 = sample_3opetope();
    let t2_inputs = vec![chain(2), chain(2)];
    let t2_wiring = Wiring {
        slots: vec![(0, 0, Ok(1)), (0, 1, Err(2)), (1, 0, Err(0)), (1, 1, Err(1))],
        root: Some(0),
    };
    let t2_output = chain(3);
    let t2 = theta_from_wiring(&t2_inputs, &t2_output, &t2_wiring, None)?;
    let theta_2 = Opetope::make(t2_inputs, t2_output, t2)?;

    let inputs = vec![theta_1.clone(), theta_2.clone()];
    let gamma_wiring = Wiring {
        slots: vec![(0, 0, Ok(1)), (0, 1, Err(0)), (1, 0, Err(1)), (1, 1, Err(2))],
        root: Some(0),
    };
    let swap = OpetopeMorphism::Frame(Box::new(FrameMorphismData {
        source: chain(2),
        target: theta_1.cell().unwrap().inputs[1].clone(),
        sigma: vec![1, 0],
        inputs: vec![OpetopeMorphism::Trivial(Opetope::Arrow); 2],
        output: OpetopeMorphism::Trivial(Opetope::Arrow),
    }));
    let labels = vec![
        OpetopeMorphism::identity(&theta_2.cell().unwrap().output),
        swap,
        OpetopeMorphism::identity(&theta_2.cell().unwrap().inputs[0]),
        OpetopeMorphism::identity(&theta_2.cell().unwrap().inputs[1]),
        OpetopeMorphism::identity(&theta_1.cell().unwrap().output),
    ];

    let out_inputs = vec![chain(2), chain(2), chain(2)];
    let out_output = theta_1.cell().unwrap().output.clone();
    let probe_output = make_unchecked(&out_inputs, &out_output);
    let gamma_probe =
        theta_from_wiring(&inputs, &probe_output, &gamma_wiring, Some(labels.clone()))?;
    let composite = condition_b_composite(&inputs, &gamma_probe)?;
    let output = Opetope::make(out_inputs, out_output, composite)?;

    let gamma = theta_from_wiring(&inputs, &output, &gamma_wiring, Some(labels))?;
    Opetope::make(inputs, output, gamma)
}

/// A frame-only placeholder cell used to type a configuration before its
/// real output is known; only its frame is read.
fn make_unchecked(inputs: &[Opetope], output: &Opetope) -> Opetope {
    use crate::opetope::CellData;
    // The theta is never consulted by expanded_frame; a placeholder chain
    // configuration keeps the data well formed enough to read the frame.
    let placeholder = chain(0).theta().unwrap().clone();
    Opetope::Cell(Box::new(CellData {
        inputs: inputs.to_vec(),
        output: output.clone(),
        theta: placeholder,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::opetope::{frame_functor, hom};
    use crate::shape::ShapeTerm;

    #[test]
    fn sample_3opetope_validates() {
        let op = sample_3opetope();
        assert_eq!(op.dim(), 3);
        assert_eq!(op.arity(), 2);
        let f = frame_functor(&op).unwrap();
        assert_eq!(f.shape, ShapeTerm::x(2));
    }

    #[test]
    fn sample_3opetope_rejects_wrong_output_arity() {
        let inputs = sample_inputs();
        let bad_output = chain(3);
        let theta = theta_from_wiring(&inputs, &sample_output(), &sample_wiring(), None).unwrap();
        let err = Opetope::make(inputs, bad_output, theta).unwrap_err();
        assert!(matches!(err, Error::CompositeMismatch(_)));
    }

    #[test]
    fn sample_3opetope_rejects_wrong_output_order() {
        let inputs = sample_inputs();
        let bad_output = chain(4);
        let theta = theta_from_wiring(&inputs, &bad_output, &sample_wiring(), None).unwrap();
        let err = Opetope::make(inputs, bad_output, theta).unwrap_err();
        assert!(matches!(err, Error::CompositeMismatch(_)));
    }

    #[test]
    fn sample_4opetope_validates() {
        let op = sample_4opetope().unwrap();
        assert_eq!(op.dim(), 4);
        assert_eq!(op.arity(), 2);
    }

    #[test]
    fn sample_4opetope_with_permutation_validates() {
        let op = sample_4opetope_with_permutation().unwrap();
        assert_eq!(op.dim(), 4);
        // At least one configuration label is a nontrivial permutation.
        let theta = op.theta().unwrap();
        let nontrivial = theta.labels.iter().any(|m| match m {
            OpetopeMorphism::Frame(f) => f.sigma != (0..f.sigma.len()).collect::<Vec<_>>(),
            OpetopeMorphism::Trivial(_) => false,
        });
        assert!(nontrivial);
    }

    #[test]
    fn sample_homs_at_dim3_are_isos() {
        let op = sample_3opetope();
        let endos = hom(&op, &op);
        assert!(!endos.is_empty());
        let id = OpetopeMorphism::identity(&op);
        assert!(endos.contains(&id));
        for f in &endos {
            let mut invertible = false;
            for g in hom(&op, &op) {
                if f.compose(&g).unwrap() == id && g.compose(f).unwrap() == id {
                    invertible = true;
                    break;
                }
            }
            assert!(invertible);
        }
    }
}
