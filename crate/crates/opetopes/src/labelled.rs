//! Labelled shapes and labelled graphs over a base category, and the
//! functor that expands edge labels into whole graphs.
//!
//! A labelled graph carries one base-category morphism per mate pair,
//! directed from the minus mate to the plus mate of the twisted sum. Since
//! domain variances are reversed in the twisted sum, stored labels point
//! "backwards" on the domain side, which is what makes path-order
//! composition below work without case splits.

use crate::error::{Error, Result};
use crate::graph::{tensor_all_prefixes, twisted_index, Graph, Half};
use crate::shape::{Side, ShapeTerm, VarPath};
use std::fmt::Debug;

/// A small category interface: object equality, identities, composition and
/// finite hom enumeration. Implementations must be pure.
pub trait CatOracle {
    type Obj: Clone + PartialEq + Debug;
    type Mor: Clone + PartialEq + Debug;

    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn source(&self, m: &Self::Mor) -> Self::Obj;
    fn target(&self, m: &Self::Mor) -> Self::Obj;
    /// `f` then `g`, in diagram order.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Mor>;
}

/// A shape with one base object per generator leaf, in leaf order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledShape<A> {
    pub shape: ShapeTerm,
    pub labels: Vec<A>,
}

impl<A: Clone> LabelledShape<A> {
    pub fn unit() -> LabelledShape<A> {
        LabelledShape {
            shape: ShapeTerm::Unit,
            labels: Vec::new(),
        }
    }

    pub fn hom(dom: LabelledShape<A>, cod: LabelledShape<A>) -> LabelledShape<A> {
        let mut labels = dom.labels;
        labels.extend(cod.labels);
        LabelledShape {
            shape: ShapeTerm::hom(dom.shape, cod.shape),
            labels,
        }
    }

    pub fn tensor_all(parts: &[LabelledShape<A>]) -> LabelledShape<A> {
        LabelledShape {
            shape: ShapeTerm::tensor_all(parts.iter().map(|p| p.shape.clone())),
            labels: parts.iter().flat_map(|p| p.labels.clone()).collect(),
        }
    }

    /// The label at a leaf path.
    pub fn label_at(&self, path: &VarPath) -> Option<&A> {
        let leaves = self.shape.leaves();
        let idx = leaves.iter().position(|p| p == path)?;
        self.labels.get(idx)
    }
}

/// Attach labels to a shape, one per generator leaf.
pub fn label_shape<A: Clone>(shape: ShapeTerm, labels: Vec<A>) -> Result<LabelledShape<A>> {
    let expected = shape.leaf_count();
    if labels.len() != expected {
        return Err(Error::ArityMismatch {
            expected,
            got: labels.len(),
        });
    }
    Ok(LabelledShape { shape, labels })
}

/// A graph between labelled shapes with one morphism per mate pair, indexed
/// by the canonical pair order of the underlying graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledGraph<A, M> {
    pub dom: LabelledShape<A>,
    pub cod: LabelledShape<A>,
    pub underlying: Graph,
    pub labels: Vec<M>,
}

impl<A: Clone + PartialEq + Debug, M: Clone + PartialEq + Debug> LabelledGraph<A, M> {
    /// The labels of the two endpoints of canonical pair `p`, as
    /// `(minus label, plus label)`.
    pub fn endpoint_labels(&self, p: usize) -> (&A, &A) {
        let tw = self.underlying.twisted();
        let (neg, pos) = self.underlying.pair_endpoints(p);
        let at = |i: usize| -> &A {
            let v = &tw[i];
            let side = match v.side {
                Side::Dom => &self.dom,
                Side::Cod => &self.cod,
            };
            side.label_at(&v.path).expect("leaf label present")
        };
        (at(neg), at(pos))
    }

    pub fn identity<C>(shape: &LabelledShape<A>, cat: &C) -> LabelledGraph<A, M>
    where
        C: CatOracle<Obj = A, Mor = M>,
    {
        let underlying = Graph::identity(&shape.shape);
        let tw = underlying.twisted();
        let leaves = shape.shape.leaves();
        let labels = underlying
            .pairs()
            .iter()
            .map(|&(a, _)| {
                let idx = leaves.iter().position(|p| *p == tw[a].path).unwrap();
                cat.identity(&shape.labels[idx])
            })
            .collect();
        LabelledGraph {
            dom: shape.clone(),
            cod: shape.clone(),
            underlying,
            labels,
        }
    }

    /// Re-address `A -> B` as `I -> [A, B]`; indices, pairs and labels are
    /// untouched.
    pub fn curry(&self) -> LabelledGraph<A, M> {
        LabelledGraph {
            dom: LabelledShape::unit(),
            cod: LabelledShape::hom(self.dom.clone(), self.cod.clone()),
            underlying: self.underlying.curry(),
            labels: self.labels.clone(),
        }
    }

    /// Inverse to [`LabelledGraph::curry`].
    pub fn uncurry(&self) -> Result<LabelledGraph<A, M>> {
        let underlying = self.underlying.uncurry()?;
        let dom_leaves = underlying.dom().leaf_count();
        Ok(LabelledGraph {
            dom: LabelledShape {
                shape: underlying.dom().clone(),
                labels: self.cod.labels[..dom_leaves].to_vec(),
            },
            cod: LabelledShape {
                shape: underlying.cod().clone(),
                labels: self.cod.labels[dom_leaves..].to_vec(),
            },
            underlying,
            labels: self.labels.clone(),
        })
    }

    /// Composite with label threading: each resulting pair's label is the
    /// base composite of the labels along the traced path, read from the
    /// minus endpoint.
    pub fn compose<C>(&self, other: &LabelledGraph<A, M>, cat: &C) -> Result<LabelledGraph<A, M>>
    where
        C: CatOracle<Obj = A, Mor = M>,
    {
        if self.cod != other.dom {
            return Err(Error::ShapeMismatch(
                "labelled middle shapes differ".to_string(),
            ));
        }
        let (underlying, traces) = self.underlying.compose_traced(&other.underlying)?;
        let mut labels = Vec::with_capacity(traces.len());
        for edges in &traces {
            let mut acc: Option<M> = None;
            for &(half, pair) in edges {
                let step = match half {
                    Half::First => &self.labels[pair],
                    Half::Second => &other.labels[pair],
                };
                acc = Some(match acc {
                    None => step.clone(),
                    Some(prev) => {
                        if cat.target(&prev) != cat.source(step) {
                            return Err(Error::TypeMismatch(format!(
                                "labels do not compose along trace: {:?} then {:?}",
                                prev, step
                            )));
                        }
                        cat.compose(&prev, step)?
                    }
                });
            }
            labels.push(acc.expect("every pair traverses at least one edge"));
        }
        Ok(LabelledGraph {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            underlying,
            labels,
        })
    }

    /// Canonical n-ary tensor, mirroring [`Graph::tensor_all`].
    pub fn tensor_all(parts: &[LabelledGraph<A, M>]) -> LabelledGraph<A, M> {
        let dom = LabelledShape::tensor_all(&parts.iter().map(|p| p.dom.clone()).collect::<Vec<_>>());
        let cod = LabelledShape::tensor_all(&parts.iter().map(|p| p.cod.clone()).collect::<Vec<_>>());
        let underlying = Graph::tensor_all(
            &parts
                .iter()
                .map(|p| p.underlying.clone())
                .collect::<Vec<_>>(),
        );
        // Pair indices change under re-addressing; rebuild the label list in
        // the new canonical order by matching (side, joined path) endpoints.
        let index = twisted_index(&dom.shape, &cod.shape);
        let dom_prefixes =
            tensor_all_prefixes(parts.iter().map(|p| &p.dom.shape).collect::<Vec<_>>());
        let cod_prefixes =
            tensor_all_prefixes(parts.iter().map(|p| &p.cod.shape).collect::<Vec<_>>());
        let mut by_min: Vec<(usize, M)> = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            let tw = part.underlying.twisted();
            let locate = |i: usize| -> usize {
                let v = &tw[i];
                let prefix = match v.side {
                    Side::Dom => &dom_prefixes[k],
                    Side::Cod => &cod_prefixes[k],
                };
                index[&(v.side, prefix.join(&v.path))]
            };
            for (p, (a, b)) in part.underlying.pairs().into_iter().enumerate() {
                let (na, nb) = (locate(a), locate(b));
                by_min.push((na.min(nb), part.labels[p].clone()));
            }
        }
        by_min.sort_by_key(|(min, _)| *min);
        let labels = by_min.into_iter().map(|(_, m)| m).collect();
        LabelledGraph {
            dom,
            cod,
            underlying,
            labels,
        }
    }
}

/// Validating constructor: every label must run from the minus endpoint's
/// leaf label to the plus endpoint's, in pair order.
pub fn label_graph<C: CatOracle>(
    dom: LabelledShape<C::Obj>,
    cod: LabelledShape<C::Obj>,
    underlying: Graph,
    labels: Vec<C::Mor>,
    cat: &C,
) -> Result<LabelledGraph<C::Obj, C::Mor>> {
    if dom.shape != *underlying.dom() || cod.shape != *underlying.cod() {
        return Err(Error::ShapeMismatch(
            "labelled shapes disagree with the underlying graph".to_string(),
        ));
    }
    if dom.labels.len() != dom.shape.leaf_count() || cod.labels.len() != cod.shape.leaf_count() {
        return Err(Error::ArityMismatch {
            expected: dom.shape.leaf_count() + cod.shape.leaf_count(),
            got: dom.labels.len() + cod.labels.len(),
        });
    }
    let pairs = underlying.pairs();
    if labels.len() != pairs.len() {
        return Err(Error::ArityMismatch {
            expected: pairs.len(),
            got: labels.len(),
        });
    }
    let lg = LabelledGraph {
        dom,
        cod,
        underlying,
        labels,
    };
    for p in 0..pairs.len() {
        let (neg, pos) = lg.endpoint_labels(p);
        let m = &lg.labels[p];
        if cat.source(m) != *neg || cat.target(m) != *pos {
            return Err(Error::TypeMismatch(format!(
                "label {m:?} on pair {p} must run {neg:?} -> {pos:?}"
            )));
        }
    }
    Ok(lg)
}

/// A functor from `C` into labelled shapes and graphs over `D`, given on
/// objects and on morphisms.
pub trait ShapeFunctor<C: CatOracle, D: CatOracle> {
    fn map_object(&self, x: &C::Obj) -> Result<LabelledShape<D::Obj>>;
    fn map_morphism(&self, m: &C::Mor) -> Result<LabelledGraph<D::Obj, D::Mor>>;
}

/// Relabel a shape through a functor, expanding each leaf into the shape of
/// its image.
pub fn expand_shape<C: CatOracle, D: CatOracle, F: ShapeFunctor<C, D>>(
    functor: &F,
    s: &LabelledShape<C::Obj>,
) -> Result<LabelledShape<D::Obj>> {
    let images = s
        .labels
        .iter()
        .map(|x| functor.map_object(x))
        .collect::<Result<Vec<_>>>()?;
    let shape = s
        .shape
        .substitute_leaves(&images.iter().map(|i| i.shape.clone()).collect::<Vec<_>>())?;
    let labels = images.into_iter().flat_map(|i| i.labels).collect();
    Ok(LabelledShape { shape, labels })
}

/// Apply the label-expansion functor to a labelled graph: the underlying
/// shape is relabelled leafwise, and each mate pair's label `g` is replaced
/// by the whole graph `F(g)`, its domain placed at the minus endpoint and
/// its codomain at the plus endpoint.
pub fn apply_kf<C: CatOracle, D: CatOracle, F: ShapeFunctor<C, D>>(
    functor: &F,
    g: &LabelledGraph<C::Obj, C::Mor>,
) -> Result<LabelledGraph<D::Obj, D::Mor>> {
    let dom = expand_shape(functor, &g.dom)?;
    let cod = expand_shape(functor, &g.cod)?;
    let index = twisted_index(&dom.shape, &cod.shape);
    let tw = g.underlying.twisted();

    let mut by_min: Vec<((usize, usize), D::Mor)> = Vec::new();
    for (p, _) in g.underlying.pairs().iter().enumerate() {
        let (neg, pos) = g.underlying.pair_endpoints(p);
        let image = functor.map_morphism(&g.labels[p])?;
        let place = |side_of: usize, inner_side: Side, inner: &VarPath| -> usize {
            let outer = &tw[side_of];
            let _ = inner_side;
            index[&(outer.side, outer.path.join(inner))]
        };
        let itw = image.underlying.twisted();
        for (ip, (a, b)) in image.underlying.pairs().into_iter().enumerate() {
            let map_end = |i: usize| -> usize {
                let v = &itw[i];
                match v.side {
                    Side::Dom => place(neg, Side::Dom, &v.path),
                    Side::Cod => place(pos, Side::Cod, &v.path),
                }
            };
            let (na, nb) = (map_end(a), map_end(b));
            by_min.push(((na.min(nb), na.max(nb)), image.labels[ip].clone()));
        }
    }
    by_min.sort_by(|(a, _), (b, _)| a.cmp(b));
    let pairs: Vec<(usize, usize)> = by_min.iter().map(|(p, _)| *p).collect();
    let labels: Vec<D::Mor> = by_min.into_iter().map(|(_, m)| m).collect();
    let underlying = Graph::make(dom.shape.clone(), cod.shape.clone(), &pairs)?;
    Ok(LabelledGraph {
        dom,
        cod,
        underlying,
        labels,
    })
}

/// The terminal category: one object, one arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TerminalCat;

impl CatOracle for TerminalCat {
    type Obj = ();
    type Mor = ();

    fn identity(&self, _x: &()) {}
    fn source(&self, _m: &()) {}
    fn target(&self, _m: &()) {}
    fn compose(&self, _f: &(), _g: &()) -> Result<()> {
        Ok(())
    }
    fn hom(&self, _x: &(), _y: &()) -> Vec<()> {
        vec![()]
    }
}
