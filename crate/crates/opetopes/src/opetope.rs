//! The inductive construction of the categories of k-opetopes.
//!
//! A k-opetope for k >= 2 is a frame of (k-1)-opetopes (an input list and an
//! output) together with a configuration graph from the unit into the
//! expanded frame, labelled over the category of (k-2)-opetopes. Validation
//! checks the frame shape, the tree criterion on the configuration, and for
//! k >= 3 that composing the inputs along the configuration actually yields
//! the output.

use crate::error::{Error, Result};
use crate::graph::{enumerate_allowable, is_tree_allowable, Graph, Port, TreeFrameShape, TreeView};
use crate::labelled::{
    apply_kf, label_graph, label_shape, CatOracle, LabelledGraph, LabelledShape, ShapeFunctor,
};
use crate::shape::ShapeTerm;
use itertools::Itertools;

/// A configuration graph: the morphism part of an opetope, labelled over
/// the category of opetopes two dimensions down.
pub type Theta = LabelledGraph<Opetope, OpetopeMorphism>;

/// A labelled frame shape over the category of opetopes one dimension down.
pub type FrameShape = LabelledShape<Opetope>;

/// An opetope of any dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Opetope {
    /// The unique 0-opetope.
    Point,
    /// The unique 1-opetope, with one input point and one output point.
    Arrow,
    /// A k-opetope for k >= 2.
    Cell(Box<CellData>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellData {
    pub inputs: Vec<Opetope>,
    pub output: Opetope,
    pub theta: Theta,
}

/// The unique 0-opetope.
pub fn point() -> Opetope {
    Opetope::Point
}

/// The unique 1-opetope.
pub fn arrow() -> Opetope {
    Opetope::Arrow
}

impl Opetope {
    pub fn dim(&self) -> usize {
        match self {
            Opetope::Point => 0,
            Opetope::Arrow => 1,
            Opetope::Cell(c) => c.output.dim() + 1,
        }
    }

    /// Number of inputs; defined for dimension >= 1.
    pub fn arity(&self) -> usize {
        match self {
            Opetope::Point => 0,
            Opetope::Arrow => 1,
            Opetope::Cell(c) => c.inputs.len(),
        }
    }

    pub fn cell(&self) -> Option<&CellData> {
        match self {
            Opetope::Cell(c) => Some(c),
            _ => None,
        }
    }

    /// The configuration graph of a cell, as a morphism `I -> A(frame)`.
    pub fn theta(&self) -> Option<&Theta> {
        self.cell().map(|c| &c.theta)
    }

    /// Validating constructor for dimensions >= 2; see module docs.
    pub fn make(inputs: Vec<Opetope>, output: Opetope, theta: Theta) -> Result<Opetope> {
        let d = output.dim();
        if inputs.iter().any(|i| i.dim() != d) {
            return Err(Error::DimMismatch(
                "inputs and output must share a dimension".to_string(),
            ));
        }
        let k = d + 1;
        if k < 2 {
            return Err(Error::DimMismatch(
                "cells start at dimension 2; use point() and arrow() below".to_string(),
            ));
        }

        if theta.dom != LabelledShape::unit() {
            return Err(Error::NotTreeShaped(
                "configuration domain must be the unit".to_string(),
            ));
        }
        let (cod_in, cod_out) = match &theta.cod.shape {
            ShapeTerm::Hom(d, c) => ((**d).clone(), (**c).clone()),
            other => {
                return Err(Error::NotTreeShaped(format!(
                    "configuration codomain must be a hom, got {other}"
                )))
            }
        };

        // Condition A: the frame must expand to the configuration's type.
        // The input half failing is a malformed tree; the output half
        // failing means the configured composite's frame cannot be the
        // stated output's frame.
        let expected_in = expanded_inputs(&inputs)?;
        let expected_out = frame_functor(&output)?;
        let in_leaves = cod_in.leaf_count();
        let got_in = LabelledShape {
            shape: cod_in,
            labels: theta.cod.labels[..in_leaves.min(theta.cod.labels.len())].to_vec(),
        };
        let got_out = LabelledShape {
            shape: cod_out,
            labels: theta.cod.labels[in_leaves.min(theta.cod.labels.len())..].to_vec(),
        };
        if got_in != expected_in {
            return Err(Error::NotTreeShaped(format!(
                "configuration inputs {} do not match the frame inputs {}",
                got_in.shape, expected_in.shape
            )));
        }
        if got_out != expected_out {
            return Err(Error::CompositeMismatch(format!(
                "configured composite frame {} differs from the output frame {}",
                got_out.shape, expected_out.shape
            )));
        }

        if !is_tree_allowable(&theta.underlying)? {
            return Err(Error::NotTreeShaped(
                "configuration pairing is not a tree".to_string(),
            ));
        }

        // Condition B: composing the inputs along the configuration must
        // yield the output. Does not apply at dimension 2.
        if k >= 3 {
            let composite = condition_b_composite(&inputs, &theta)?;
            let expected = output.theta().expect("dimension >= 2 output has a theta");
            if composite != *expected {
                return Err(Error::CompositeMismatch(
                    "composite of the inputs along the configuration differs from the output"
                        .to_string(),
                ));
            }
        }

        Ok(Opetope::Cell(Box::new(CellData {
            inputs,
            output,
            theta,
        })))
    }
}

/// The composite `A(phi)(uncurried theta) . (theta_1 (x) ... (x) theta_m)`
/// used by condition B, a labelled graph over opetopes three dimensions
/// below the cell.
pub fn condition_b_composite(inputs: &[Opetope], theta: &Theta) -> Result<Theta> {
    let k = match inputs.first() {
        Some(i) => i.dim() + 1,
        // Codomain labels sit two dimensions below the cell; the output
        // half is never empty.
        None => match theta.cod.labels.last() {
            Some(l) => l.dim() + 2,
            None => {
                return Err(Error::DimMismatch(
                    "configuration codomain carries no labels".to_string(),
                ))
            }
        },
    };
    if k < 3 {
        return Err(Error::DimMismatch(
            "the composite condition only applies from dimension 3".to_string(),
        ));
    }
    let expanded = apply_kf(&FrameFunctor { dim: k - 2 }, &theta.uncurry()?)?;
    let inner = inputs
        .iter()
        .map(|i| i.theta().expect("inputs of dimension >= 2 carry thetas").clone())
        .collect::<Vec<_>>();
    let cat = OpeCategory { dim: k - 3 };
    LabelledGraph::tensor_all(&inner).compose(&expanded, &cat)
}

/// An opetope morphism. Beyond dimension 1 it is frame data: a permutation
/// of the inputs with componentwise lower-dimensional morphisms (running
/// from the target's inputs back to the source's) and an output morphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpetopeMorphism {
    /// The identity on the point or the arrow.
    Trivial(Opetope),
    Frame(Box<FrameMorphismData>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameMorphismData {
    pub source: Opetope,
    pub target: Opetope,
    /// `sigma[i]` is the source input matched with target input `i`.
    pub sigma: Vec<usize>,
    /// `inputs[i] : target.inputs[i] -> source.inputs[sigma[i]]`.
    pub inputs: Vec<OpetopeMorphism>,
    /// `output : source.output -> target.output`.
    pub output: OpetopeMorphism,
}

impl OpetopeMorphism {
    pub fn identity(x: &Opetope) -> OpetopeMorphism {
        match x {
            Opetope::Point | Opetope::Arrow => OpetopeMorphism::Trivial(x.clone()),
            Opetope::Cell(c) => OpetopeMorphism::Frame(Box::new(FrameMorphismData {
                source: x.clone(),
                target: x.clone(),
                sigma: (0..c.inputs.len()).collect(),
                inputs: c.inputs.iter().map(OpetopeMorphism::identity).collect(),
                output: OpetopeMorphism::identity(&c.output),
            })),
        }
    }

    pub fn source(&self) -> Opetope {
        match self {
            OpetopeMorphism::Trivial(x) => x.clone(),
            OpetopeMorphism::Frame(f) => f.source.clone(),
        }
    }

    pub fn target(&self) -> Opetope {
        match self {
            OpetopeMorphism::Trivial(x) => x.clone(),
            OpetopeMorphism::Frame(f) => f.target.clone(),
        }
    }

    /// `self` then `other`, in diagram order.
    pub fn compose(&self, other: &OpetopeMorphism) -> Result<OpetopeMorphism> {
        if self.target() != other.source() {
            return Err(Error::TypeMismatch(
                "opetope morphisms do not compose".to_string(),
            ));
        }
        match (self, other) {
            (OpetopeMorphism::Trivial(x), OpetopeMorphism::Trivial(_)) => {
                Ok(OpetopeMorphism::Trivial(x.clone()))
            }
            (OpetopeMorphism::Frame(f), OpetopeMorphism::Frame(g)) => {
                let m = f.sigma.len();
                let sigma: Vec<usize> = (0..m).map(|i| f.sigma[g.sigma[i]]).collect();
                let inputs = (0..m)
                    .map(|i| g.inputs[i].compose(&f.inputs[g.sigma[i]]))
                    .collect::<Result<Vec<_>>>()?;
                let output = f.output.compose(&g.output)?;
                Ok(OpetopeMorphism::Frame(Box::new(FrameMorphismData {
                    source: f.source.clone(),
                    target: g.target.clone(),
                    sigma,
                    inputs,
                    output,
                })))
            }
            _ => Err(Error::TypeMismatch(
                "opetope morphisms of different kinds".to_string(),
            )),
        }
    }
}

/// The category of opetopes of a fixed dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpeCategory {
    pub dim: usize,
}

impl CatOracle for OpeCategory {
    type Obj = Opetope;
    type Mor = OpetopeMorphism;

    fn identity(&self, x: &Opetope) -> OpetopeMorphism {
        OpetopeMorphism::identity(x)
    }

    fn source(&self, m: &OpetopeMorphism) -> Opetope {
        m.source()
    }

    fn target(&self, m: &OpetopeMorphism) -> Opetope {
        m.target()
    }

    fn compose(&self, f: &OpetopeMorphism, g: &OpetopeMorphism) -> Result<OpetopeMorphism> {
        f.compose(g)
    }

    fn hom(&self, x: &Opetope, y: &Opetope) -> Vec<OpetopeMorphism> {
        hom(x, y)
    }
}

/// The frame of an opetope of dimension >= 1, as a labelled shape over the
/// category one dimension down.
pub fn frame_functor(x: &Opetope) -> Result<FrameShape> {
    match x {
        Opetope::Point => Err(Error::DimMismatch("the point has no frame".to_string())),
        Opetope::Arrow => label_shape(ShapeTerm::x(1), vec![Opetope::Point, Opetope::Point]),
        Opetope::Cell(c) => {
            let mut labels = c.inputs.clone();
            labels.push(c.output.clone());
            label_shape(ShapeTerm::x(c.inputs.len()), labels)
        }
    }
}

/// The frame-shaped labelled graph of an opetope morphism: the permutation
/// wiring on the inputs with the component morphisms as labels (reversed on
/// the domain side), and the output morphism on the output wire.
pub fn frame_functor_on_morphism(m: &OpetopeMorphism) -> Result<Theta2> {
    match m {
        OpetopeMorphism::Trivial(x) => {
            if *x == Opetope::Point {
                return Err(Error::DimMismatch(
                    "the point's identity has no frame graph".to_string(),
                ));
            }
            let shape = frame_functor(x)?;
            let cat = OpeCategory { dim: x.dim() - 1 };
            Ok(LabelledGraph::identity(&shape, &cat))
        }
        OpetopeMorphism::Frame(f) => build_frame_graph(
            &frame_functor(&f.source)?,
            &frame_functor(&f.target)?,
            &f.sigma,
            &f.inputs,
            &f.output,
        ),
    }
}

/// Alias: frame graphs are labelled graphs over the dimension below.
pub type Theta2 = LabelledGraph<Opetope, OpetopeMorphism>;

/// The frame-shaped labelled graph on raw data: domain input `sigma[i]`
/// pairs codomain input `i` carrying `inputs[i]`, and the outputs pair
/// carrying `output`.
pub fn build_frame_graph(
    source: &FrameShape,
    target: &FrameShape,
    sigma: &[usize],
    inputs: &[OpetopeMorphism],
    output: &OpetopeMorphism,
) -> Result<Theta2> {
    let m = sigma.len();
    // Twisted order: dom inputs 0..m, dom output m, cod inputs m+1..2m+1,
    // cod output 2m+1.
    let mut by_min: Vec<((usize, usize), OpetopeMorphism)> = Vec::new();
    for i in 0..m {
        let (a, b) = (sigma[i], m + 1 + i);
        by_min.push(((a.min(b), a.max(b)), inputs[i].clone()));
    }
    by_min.push(((m, 2 * m + 1), output.clone()));
    by_min.sort_by(|(a, _), (b, _)| a.cmp(b));
    let pairs: Vec<(usize, usize)> = by_min.iter().map(|(p, _)| *p).collect();
    let labels: Vec<OpetopeMorphism> = by_min.into_iter().map(|(_, l)| l).collect();
    let graph = Graph::make(source.shape.clone(), target.shape.clone(), &pairs)?;
    let cat = OpeCategory {
        dim: source.labels[0].dim(),
    };
    label_graph(source.clone(), target.clone(), graph, labels, &cat)
}

/// The functor sending an opetope of dimension `dim` to its frame and a
/// morphism to its frame graph.
#[derive(Debug, Clone, Copy)]
pub struct FrameFunctor {
    pub dim: usize,
}

impl ShapeFunctor<OpeCategory, OpeCategory> for FrameFunctor {
    fn map_object(&self, x: &Opetope) -> Result<FrameShape> {
        if x.dim() != self.dim {
            return Err(Error::UndefinedLabel(format!(
                "expected dimension {}, got {}",
                self.dim,
                x.dim()
            )));
        }
        frame_functor(x)
    }

    fn map_morphism(&self, m: &OpetopeMorphism) -> Result<Theta2> {
        if m.source().dim() != self.dim {
            return Err(Error::UndefinedLabel(format!(
                "expected dimension {}, got {}",
                self.dim,
                m.source().dim()
            )));
        }
        frame_functor_on_morphism(m)
    }
}

/// The expanded input half of a configuration codomain: the tensor of the
/// inputs' frames, labelled one dimension below them.
pub fn expanded_inputs(inputs: &[Opetope]) -> Result<FrameShape> {
    let parts = inputs
        .iter()
        .map(frame_functor)
        .collect::<Result<Vec<_>>>()?;
    Ok(LabelledShape::tensor_all(&parts))
}

/// The full expanded codomain for a configuration with the given frame.
pub fn expanded_frame(inputs: &[Opetope], output: &Opetope) -> Result<FrameShape> {
    Ok(LabelledShape::hom(
        expanded_inputs(inputs)?,
        frame_functor(output)?,
    ))
}

/// A frame: the input list and output of a would-be opetope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub inputs: Vec<Opetope>,
    pub output: Opetope,
}

impl Frame {
    pub fn dim(&self) -> usize {
        self.output.dim() + 1
    }

    /// Total leaves: input arities plus the output arity.
    pub fn total_leaves(&self) -> usize {
        self.inputs.iter().map(|i| i.arity()).sum::<usize>() + self.output.arity()
    }
}

/// Enumeration caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_dim: usize,
    pub max_leaves: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_dim: 4,
            max_leaves: 8,
        }
    }
}

/// All opetopes with the given frame, in deterministic order: pairings in
/// lexicographic order, label assignments in hom order.
pub fn enumerate_opetopes(frame: &Frame, bounds: &Bounds) -> Result<Vec<Opetope>> {
    let k = frame.dim();
    if k > bounds.max_dim {
        return Err(Error::BoundExceeded(format!(
            "dimension {k} exceeds the cap of {}",
            bounds.max_dim
        )));
    }
    if frame.total_leaves() > bounds.max_leaves {
        return Err(Error::BoundExceeded(format!(
            "{} total leaves exceed the cap of {}",
            frame.total_leaves(),
            bounds.max_leaves
        )));
    }
    let shape = TreeFrameShape {
        node_arities: frame.inputs.iter().map(|i| i.arity()).collect(),
        out_arity: frame.output.arity(),
    };
    let cod = expanded_frame(&frame.inputs, &frame.output)?;
    let cat = OpeCategory {
        dim: k.saturating_sub(2),
    };
    let mut out = Vec::new();
    for g in enumerate_allowable(&shape, bounds.max_leaves)? {
        let curried = g.curry();
        if *curried.cod() != cod.shape {
            continue;
        }
        // Enumerate a label for every pair, from the finite homs between the
        // endpoint labels.
        let probe = LabelledGraph {
            dom: LabelledShape::unit(),
            cod: cod.clone(),
            underlying: curried.clone(),
            labels: vec![OpetopeMorphism::Trivial(Opetope::Point); curried.pairs().len()],
        };
        let choices: Vec<Vec<OpetopeMorphism>> = (0..curried.pairs().len())
            .map(|p| {
                let (neg, pos) = probe.endpoint_labels(p);
                cat.hom(neg, pos)
            })
            .collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        for labels in choices.into_iter().multi_cartesian_product() {
            let theta = LabelledGraph {
                dom: LabelledShape::unit(),
                cod: cod.clone(),
                underlying: curried.clone(),
                labels,
            };
            match Opetope::make(frame.inputs.clone(), frame.output.clone(), theta) {
                Ok(op) => out.push(op),
                Err(Error::CompositeMismatch(_)) | Err(Error::ClosedLoop) => {}
                Err(Error::NotTreeShaped(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// All morphisms between two opetopes of equal dimension.
///
/// At dimension 2 every permutation of the inputs counts, so an m-ary pair
/// has m! morphisms. From dimension 3 on, a candidate is kept only when its
/// frame graph, expanded one dimension down, carries the source
/// configuration to the target configuration.
pub fn hom(a: &Opetope, b: &Opetope) -> Vec<OpetopeMorphism> {
    if a.dim() != b.dim() {
        return Vec::new();
    }
    match (a, b) {
        (Opetope::Point, Opetope::Point) => vec![OpetopeMorphism::Trivial(Opetope::Point)],
        (Opetope::Arrow, Opetope::Arrow) => vec![OpetopeMorphism::Trivial(Opetope::Arrow)],
        (Opetope::Cell(ca), Opetope::Cell(cb)) => {
            let m = ca.inputs.len();
            if m != cb.inputs.len() {
                return Vec::new();
            }
            let k = a.dim();
            let mut out = Vec::new();
            let sigmas: Vec<Vec<usize>> = if m == 0 {
                vec![Vec::new()]
            } else {
                (0..m).permutations(m).collect()
            };
            for sigma in sigmas {
                let input_choices: Vec<Vec<OpetopeMorphism>> = (0..m)
                    .map(|i| hom(&cb.inputs[i], &ca.inputs[sigma[i]]))
                    .collect();
                if input_choices.iter().any(|c| c.is_empty()) {
                    continue;
                }
                let output_choices = hom(&ca.output, &cb.output);
                for inputs in product_or_singleton(input_choices) {
                    for output in &output_choices {
                        let cand = OpetopeMorphism::Frame(Box::new(FrameMorphismData {
                            source: a.clone(),
                            target: b.clone(),
                            sigma: sigma.clone(),
                            inputs: inputs.clone(),
                            output: output.clone(),
                        }));
                        if k == 2 || morphism_triangle_holds(&cand) {
                            out.push(cand);
                        }
                    }
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Cartesian product of the factors; the empty product is one empty choice.
fn product_or_singleton<T: Clone>(factors: Vec<Vec<T>>) -> Vec<Vec<T>> {
    if factors.is_empty() {
        return vec![Vec::new()];
    }
    factors.into_iter().multi_cartesian_product().collect()
}

/// The commuting triangle for a candidate morphism of dimension >= 3: the
/// expanded frame graph must carry the source configuration to the target
/// configuration.
fn morphism_triangle_holds(m: &OpetopeMorphism) -> bool {
    let f = match m {
        OpetopeMorphism::Frame(f) => f,
        OpetopeMorphism::Trivial(_) => return true,
    };
    let k = f.source.dim();
    let frame_graph = match frame_functor_on_morphism(m) {
        Ok(g) => g,
        Err(_) => return false,
    };
    let expanded = match apply_kf(&FrameFunctor { dim: k - 1 }, &frame_graph) {
        Ok(g) => g,
        Err(_) => return false,
    };
    let cat = OpeCategory { dim: k - 2 };
    let (ta, tb) = match (f.source.theta(), f.target.theta()) {
        (Some(a), Some(b)) => (a, b),
        _ => return false,
    };
    match ta.compose(&expanded, &cat) {
        Ok(lhs) => lhs == *tb,
        Err(_) => false,
    }
}

/// The m-ary 2-opetope whose chain order is the identity: listed input p
/// sits at chain position p.
pub fn chain(m: usize) -> Opetope {
    chain_with_positions(&(0..m).collect::<Vec<_>>())
}

/// The m-ary 2-opetope with `order[p]` the listed input sitting at chain
/// position `p` (positions read from the boundary input upward).
pub fn chain_with_positions(order: &[usize]) -> Opetope {
    let m = order.len();
    let inputs = vec![Opetope::Arrow; m];
    let output = Opetope::Arrow;
    let shape = TreeFrameShape {
        node_arities: vec![1; m],
        out_arity: 1,
    };
    let view = tree_view_for(&shape);
    let mut pairs = Vec::new();
    if m == 0 {
        pairs.push((
            view.index_of(Port::BoundaryInput { slot: 0 }),
            view.index_of(Port::BoundaryOutput),
        ));
    } else {
        pairs.push((
            view.index_of(Port::BoundaryInput { slot: 0 }),
            view.index_of(Port::NodeInput {
                node: order[0],
                slot: 0,
            }),
        ));
        for p in 1..m {
            pairs.push((
                view.index_of(Port::NodeOutput { node: order[p - 1] }),
                view.index_of(Port::NodeInput {
                    node: order[p],
                    slot: 0,
                }),
            ));
        }
        pairs.push((
            view.index_of(Port::NodeOutput { node: order[m - 1] }),
            view.index_of(Port::BoundaryOutput),
        ));
    }
    let g = Graph::make(shape.dom_shape(), shape.cod_shape(), &pairs)
        .expect("chain pairing is valid")
        .curry();
    let cod = expanded_frame(&inputs, &output).expect("arrow frames expand");
    let labels = vec![OpetopeMorphism::Trivial(Opetope::Point); g.pairs().len()];
    let theta = LabelledGraph {
        dom: LabelledShape::unit(),
        cod,
        underlying: g,
        labels,
    };
    Opetope::make(inputs, output, theta).expect("chains are valid 2-opetopes")
}

/// Build a tree view for a frame shape without constructing a real pairing.
pub fn tree_view_for(shape: &TreeFrameShape) -> TreeView {
    use crate::shape::{twisted_variables, Variance};
    let dom = shape.dom_shape();
    let cod = shape.cod_shape();
    let tw = twisted_variables(&dom, &cod);
    let plus: Vec<_> = (0..tw.len())
        .filter(|&i| tw[i].variance == Variance::Plus)
        .collect();
    let minus: Vec<_> = (0..tw.len())
        .filter(|&i| tw[i].variance == Variance::Minus)
        .collect();
    let pairs: Vec<_> = plus.into_iter().zip(minus).collect();
    let g = Graph::make(dom, cod, &pairs).expect("counting matching exists");
    TreeView::new(&g).expect("frame shapes are in the family")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_and_arrow() {
        assert_eq!(point().dim(), 0);
        assert_eq!(arrow().dim(), 1);
        let f = frame_functor(&arrow()).unwrap();
        assert_eq!(f.shape, ShapeTerm::x(1));
        assert_eq!(f.labels, vec![Opetope::Point, Opetope::Point]);
    }

    #[test]
    fn nullary_two_opetope_is_unique() {
        let frame = Frame {
            inputs: vec![],
            output: arrow(),
        };
        let ops = enumerate_opetopes(&frame, &Bounds::default()).unwrap();
        assert_eq!(ops.len(), 1);
        assert_eq!(ops[0].arity(), 0);
    }

    #[test]
    fn two_opetope_counting() {
        for m in 0..=4 {
            let frame = Frame {
                inputs: vec![arrow(); m],
                output: arrow(),
            };
            let ops = enumerate_opetopes(&frame, &Bounds::default()).unwrap();
            let expected: usize = (1..=m).product::<usize>().max(1);
            assert_eq!(ops.len(), expected, "arity {m}");
        }
    }

    #[test]
    fn chains_enumerate_all_orderings() {
        let frame = Frame {
            inputs: vec![arrow(); 3],
            output: arrow(),
        };
        let ops = enumerate_opetopes(&frame, &Bounds::default()).unwrap();
        for perm in (0..3).permutations(3) {
            let c = chain_with_positions(&perm);
            assert!(ops.contains(&c));
        }
    }

    #[test]
    fn dim2_homs_are_permutations() {
        let a = chain(2);
        let b = chain_with_positions(&[1, 0]);
        assert_eq!(hom(&a, &b).len(), 2);
        assert_eq!(hom(&a, &a).len(), 2);
        assert!(hom(&a, &a).contains(&OpetopeMorphism::identity(&a)));
        let c = chain(3);
        assert!(hom(&a, &c).is_empty());
    }

    #[test]
    fn morphism_composition_and_identity() {
        let a = chain(3);
        for f in hom(&a, &a) {
            let id = OpetopeMorphism::identity(&a);
            assert_eq!(f.compose(&id).unwrap(), f);
            assert_eq!(id.compose(&f).unwrap(), f);
        }
    }
}
