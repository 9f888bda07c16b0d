//! A brute-force slice-multicategory tower over the terminal symmetric
//! multicategory, kept as an independent code path from the graph kernel.
//!
//! Arrows of the k-fold slice are configuration trees: rooted trees with an
//! ordered node list, node labels drawn from the arrows one level down, and
//! every edge (including leaf edges, the root edge, and the bare edge of
//! the empty tree) carrying a reindexing morphism of the object category.
//! Composition is node replacement.

use crate::error::{Error, Result};
use itertools::Itertools;

/// An arrow somewhere in the slice tower: the unique arrow of the terminal
/// multicategory, or a configuration tree one level up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceArrow {
    Unit,
    Tree(Box<MultiArrowTree>),
}

/// An object somewhere in the tower: the terminal object, or an arrow one
/// level down.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceObj {
    Terminal,
    Arrow(Box<SliceArrow>),
}

/// A reindexing morphism between arrows: a permutation with componentwise
/// reindexings one level down. `sigma[i]` is the source-side slot matched
/// with target-side slot `i`; `inputs[i]` runs from the target's i-th
/// source to the source's `sigma[i]`-th; `output` runs source target to
/// target target.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReindexMor {
    Trivial,
    Reindex {
        sigma: Vec<usize>,
        inputs: Vec<ReindexMor>,
        output: Box<ReindexMor>,
    },
}

/// A labelled rooted tree with an ordered node list: one configuration for
/// composing the node labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiArrowTree {
    /// This tree is an arrow of the `level`-fold slice; `level >= 1`.
    pub level: usize,
    pub nodes: Vec<TreeNode>,
    /// The wire into the boundary output.
    pub root: Wire,
    /// Objects at the boundary leaves, in leaf order.
    pub leaf_objects: Vec<SliceObj>,
    /// Object at the boundary output.
    pub target_object: SliceObj,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeNode {
    pub label: SliceArrow,
    /// One wire per input slot of the label.
    pub slots: Vec<Wire>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wire {
    pub from: Feed,
    pub mor: ReindexMor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feed {
    Leaf(usize),
    Node(usize),
}

/// Source count of an arrow.
pub fn arity(a: &SliceArrow) -> usize {
    match a {
        SliceArrow::Unit => 1,
        SliceArrow::Tree(t) => t.nodes.len(),
    }
}

/// The nesting depth of an arrow: `Unit` is level 0.
pub fn level(a: &SliceArrow) -> usize {
    match a {
        SliceArrow::Unit => 0,
        SliceArrow::Tree(t) => t.level,
    }
}

/// Sources of an arrow, as objects.
pub fn sources(a: &SliceArrow) -> Vec<SliceObj> {
    match a {
        SliceArrow::Unit => vec![SliceObj::Terminal],
        SliceArrow::Tree(t) => t
            .nodes
            .iter()
            .map(|n| SliceObj::Arrow(Box::new(n.label.clone())))
            .collect(),
    }
}

/// Target of an arrow, as an object: the composite of its configuration.
pub fn target(a: &SliceArrow) -> Result<SliceObj> {
    match a {
        SliceArrow::Unit => Ok(SliceObj::Terminal),
        SliceArrow::Tree(t) => Ok(SliceObj::Arrow(Box::new(composite(t)?))),
    }
}

fn unwrap_arrow(o: &SliceObj) -> Result<&SliceArrow> {
    match o {
        SliceObj::Arrow(a) => Ok(a),
        SliceObj::Terminal => Err(Error::DimMismatch(
            "expected an arrow object, found the terminal object".to_string(),
        )),
    }
}

fn obj_arity(o: &SliceObj) -> usize {
    match o {
        SliceObj::Terminal => 0,
        SliceObj::Arrow(a) => arity(a),
    }
}

fn obj_sources(o: &SliceObj) -> Vec<SliceObj> {
    match o {
        SliceObj::Terminal => Vec::new(),
        SliceObj::Arrow(a) => sources(a),
    }
}

fn obj_target(o: &SliceObj) -> Result<SliceObj> {
    match o {
        SliceObj::Terminal => Ok(SliceObj::Terminal),
        SliceObj::Arrow(a) => target(a),
    }
}

fn sigma_of(m: &ReindexMor, arity: usize) -> Vec<usize> {
    match m {
        ReindexMor::Trivial => (0..arity).collect(),
        ReindexMor::Reindex { sigma, .. } => sigma.clone(),
    }
}

fn input_component(m: &ReindexMor, i: usize) -> ReindexMor {
    match m {
        ReindexMor::Trivial => ReindexMor::Trivial,
        ReindexMor::Reindex { inputs, .. } => inputs[i].clone(),
    }
}

fn output_component(m: &ReindexMor) -> ReindexMor {
    match m {
        ReindexMor::Trivial => ReindexMor::Trivial,
        ReindexMor::Reindex { output, .. } => (**output).clone(),
    }
}

/// The category of arrows at one tower level, with reindexing morphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EltCategory;

impl EltCategory {
    pub fn identity_obj(&self, o: &SliceObj) -> ReindexMor {
        match o {
            SliceObj::Terminal => ReindexMor::Trivial,
            SliceObj::Arrow(a) => self.identity(a),
        }
    }

    pub fn identity(&self, a: &SliceArrow) -> ReindexMor {
        match a {
            SliceArrow::Unit => ReindexMor::Trivial,
            SliceArrow::Tree(t) => ReindexMor::Reindex {
                sigma: (0..t.nodes.len()).collect(),
                inputs: t
                    .nodes
                    .iter()
                    .map(|n| self.identity(&n.label))
                    .collect(),
                output: Box::new(ReindexMor::Trivial),
            },
        }
    }

    /// `f : a -> b` then `g : b -> c`, in diagram order.
    pub fn compose(&self, f: &ReindexMor, g: &ReindexMor) -> ReindexMor {
        match (f, g) {
            (ReindexMor::Trivial, ReindexMor::Trivial) => ReindexMor::Trivial,
            (ReindexMor::Trivial, other) | (other, ReindexMor::Trivial) => other.clone(),
            (
                ReindexMor::Reindex {
                    sigma: sf,
                    inputs: inf,
                    output: outf,
                },
                ReindexMor::Reindex {
                    sigma: sg,
                    inputs: ing,
                    output: outg,
                },
            ) => {
                let m = sf.len();
                ReindexMor::Reindex {
                    sigma: (0..m).map(|i| sf[sg[i]]).collect(),
                    inputs: (0..m)
                        .map(|i| self.compose(&ing[i], &inf[sg[i]]))
                        .collect(),
                    output: Box::new(self.compose(outf, outg)),
                }
            }
        }
    }

    /// All reindexings between two objects.
    pub fn hom_obj(&self, x: &SliceObj, y: &SliceObj) -> Vec<ReindexMor> {
        match (x, y) {
            (SliceObj::Terminal, SliceObj::Terminal) => vec![ReindexMor::Trivial],
            (SliceObj::Arrow(a), SliceObj::Arrow(b)) => self.hom(a, b),
            _ => Vec::new(),
        }
    }

    /// All reindexings between two arrows.
    pub fn hom(&self, a: &SliceArrow, b: &SliceArrow) -> Vec<ReindexMor> {
        match (a, b) {
            (SliceArrow::Unit, SliceArrow::Unit) => vec![ReindexMor::Trivial],
            (SliceArrow::Tree(ta), SliceArrow::Tree(tb)) => {
                let m = ta.nodes.len();
                if m != tb.nodes.len() {
                    return Vec::new();
                }
                let src_a = sources(a);
                let src_b = sources(b);
                let (tgt_a, tgt_b) = match (target(a), target(b)) {
                    (Ok(x), Ok(y)) => (x, y),
                    _ => return Vec::new(),
                };
                let mut out = Vec::new();
                let sigmas: Vec<Vec<usize>> = if m == 0 {
                    vec![Vec::new()]
                } else {
                    (0..m).permutations(m).collect()
                };
                for sigma in sigmas {
                    let input_choices: Vec<Vec<ReindexMor>> = (0..m)
                        .map(|i| self.hom_obj(&src_b[i], &src_a[sigma[i]]))
                        .collect();
                    if input_choices.iter().any(|c| c.is_empty()) {
                        continue;
                    }
                    let output_choices = self.hom_obj(&tgt_a, &tgt_b);
                    let products: Vec<Vec<ReindexMor>> = if m == 0 {
                        vec![Vec::new()]
                    } else {
                        input_choices.into_iter().multi_cartesian_product().collect()
                    };
                    for inputs in products {
                        for output in &output_choices {
                            out.push(ReindexMor::Reindex {
                                sigma: sigma.clone(),
                                inputs: inputs.clone(),
                                output: Box::new(output.clone()),
                            });
                        }
                    }
                }
                out
            }
            _ => Vec::new(),
        }
    }
}

/// Whether a morphism fits between the two objects, shape-wise.
fn mor_compatible(m: &ReindexMor, x: &SliceObj, y: &SliceObj) -> bool {
    match m {
        ReindexMor::Trivial => match (x, y) {
            (SliceObj::Terminal, SliceObj::Terminal) => true,
            (SliceObj::Arrow(a), SliceObj::Arrow(b)) => {
                matches!((&**a, &**b), (SliceArrow::Unit, SliceArrow::Unit))
            }
            _ => false,
        },
        ReindexMor::Reindex {
            sigma,
            inputs,
            output,
        } => {
            if obj_arity(x) != sigma.len() || obj_arity(y) != sigma.len() {
                return false;
            }
            let sx = obj_sources(x);
            let sy = obj_sources(y);
            let (tx, ty) = match (obj_target(x), obj_target(y)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return false,
            };
            sigma.len() == inputs.len()
                && (0..sigma.len()).all(|i| mor_compatible(&inputs[i], &sy[i], &sx[sigma[i]]))
                && mor_compatible(output, &tx, &ty)
        }
    }
}

impl MultiArrowTree {
    pub fn leaf_count(&self) -> usize {
        self.leaf_objects.len()
    }

    /// Which node and slot each leaf feeds; `None` for the bare-edge tree.
    fn leaf_sites(&self) -> Vec<Option<(usize, usize)>> {
        let mut sites = vec![None; self.leaf_count()];
        for (i, n) in self.nodes.iter().enumerate() {
            for (s, w) in n.slots.iter().enumerate() {
                if let Feed::Leaf(l) = w.from {
                    sites[l] = Some((i, s));
                }
            }
        }
        sites
    }

    /// Structural and edge-morphism validity.
    pub fn validate(&self) -> Result<()> {
        if self.level == 0 {
            return Err(Error::DimMismatch("trees start at level 1".to_string()));
        }
        let m = self.nodes.len();
        for n in &self.nodes {
            if level(&n.label) + 1 != self.level {
                return Err(Error::DimMismatch(
                    "node labels must sit one level down".to_string(),
                ));
            }
            if n.slots.len() != arity(&n.label) {
                return Err(Error::ArityMismatch {
                    expected: arity(&n.label),
                    got: n.slots.len(),
                });
            }
        }
        // Tree structure: every node output consumed exactly once; every
        // leaf used exactly once; everything reaches the root.
        let mut node_used = vec![0usize; m];
        let mut leaf_used = vec![0usize; self.leaf_count()];
        let mut note = |w: &Wire| match w.from {
            Feed::Leaf(l) => {
                if l < leaf_used.len() {
                    leaf_used[l] += 1;
                } else {
                    leaf_used.push(usize::MAX);
                }
            }
            Feed::Node(c) => {
                if c < node_used.len() {
                    node_used[c] += 1;
                } else {
                    node_used.push(usize::MAX);
                }
            }
        };
        note(&self.root);
        for n in &self.nodes {
            for w in &n.slots {
                note(w);
            }
        }
        if node_used.len() != m || node_used.iter().any(|&u| u != 1) {
            return Err(Error::NotTreeShaped(
                "every node output must be used exactly once".to_string(),
            ));
        }
        if leaf_used.len() != self.leaf_count() || leaf_used.iter().any(|&u| u != 1) {
            return Err(Error::NotTreeShaped(
                "every leaf must be used exactly once".to_string(),
            ));
        }
        if m == 0 && !matches!(self.root.from, Feed::Leaf(0)) {
            return Err(Error::NotTreeShaped(
                "the empty tree is a bare edge".to_string(),
            ));
        }
        // Reachability from the root.
        let mut reached = vec![false; m];
        let mut stack = Vec::new();
        if let Feed::Node(r) = self.root.from {
            stack.push(r);
        }
        while let Some(i) = stack.pop() {
            if reached[i] {
                return Err(Error::NotTreeShaped("cycle".to_string()));
            }
            reached[i] = true;
            for w in &self.nodes[i].slots {
                if let Feed::Node(c) = w.from {
                    stack.push(c);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(Error::NotTreeShaped("disconnected node".to_string()));
        }
        // Edge morphisms must fit between the feeder's object and the slot's.
        let feed_obj = |f: &Feed| -> Result<SliceObj> {
            match f {
                Feed::Leaf(l) => Ok(self.leaf_objects[*l].clone()),
                Feed::Node(c) => target(&self.nodes[*c].label),
            }
        };
        for n in &self.nodes {
            let slot_objs = sources(&n.label);
            for (s, w) in n.slots.iter().enumerate() {
                if !mor_compatible(&w.mor, &feed_obj(&w.from)?, &slot_objs[s]) {
                    return Err(Error::TypeMismatch(
                        "edge morphism does not fit its endpoints".to_string(),
                    ));
                }
            }
        }
        if !mor_compatible(&self.root.mor, &feed_obj(&self.root.from)?, &self.target_object) {
            return Err(Error::TypeMismatch(
                "root morphism does not fit its endpoints".to_string(),
            ));
        }
        Ok(())
    }
}

/// The composite of a configuration: the arrow one level down obtained by
/// substituting every node's label into its place, threading the edge
/// reindexings through.
pub fn composite(t: &MultiArrowTree) -> Result<SliceArrow> {
    if t.level == 1 {
        return Ok(SliceArrow::Unit);
    }
    let elt = EltCategory;
    let c_out = unwrap_arrow(&t.target_object)?.clone();

    if t.nodes.is_empty() {
        // Bare edge: the transported identity configuration on the leaf
        // object.
        let x = unwrap_arrow(&t.leaf_objects[0])?.clone();
        let a = arity(&x);
        let gamma = &t.root.mor;
        let sigma = sigma_of(gamma, a);
        let mut slots = vec![None; a];
        for p in 0..a {
            slots[sigma[p]] = Some(Wire {
                from: Feed::Leaf(p),
                mor: input_component(gamma, p),
            });
        }
        let node = TreeNode {
            label: x,
            slots: slots.into_iter().map(|w| w.expect("all slots set")).collect(),
        };
        return Ok(SliceArrow::Tree(Box::new(MultiArrowTree {
            level: t.level - 1,
            nodes: vec![node],
            root: Wire {
                from: Feed::Node(0),
                mor: output_component(gamma),
            },
            leaf_objects: obj_sources(&SliceObj::Arrow(Box::new(c_out.clone()))),
            target_object: obj_target(&SliceObj::Arrow(Box::new(c_out)))?,
        })));
    }

    let sites = t.leaf_sites();
    let resolver = Resolver { tree: t, elt };

    let mut nodes = Vec::with_capacity(t.leaf_count());
    for l in 0..t.leaf_count() {
        let (i, s) = sites[l].expect("nonempty trees feed every leaf to a slot");
        let gamma = &t.nodes[i].slots[s].mor;
        let label = unwrap_arrow(&t.leaf_objects[l])?.clone();
        let inner = inner_tree(&t.nodes[i].label)?;
        let a = inner.nodes[s].slots.len();
        let sigma = sigma_of(gamma, a);
        let mut slots = vec![None; a];
        for p in 0..a {
            let (feed, mor) = resolver.resolve_within(i, &inner.nodes[s].slots[p])?;
            slots[sigma[p]] = Some(Wire {
                from: feed,
                mor: elt.compose(&mor, &input_component(gamma, p)),
            });
        }
        nodes.push(TreeNode {
            label,
            slots: slots.into_iter().map(|w| w.expect("all slots set")).collect(),
        });
    }

    let root = match t.root.from {
        Feed::Node(r) => {
            let (feed, mor) = resolver.resolve_chunk_root(r)?;
            Wire {
                from: feed,
                mor: elt.compose(&mor, &output_component(&t.root.mor)),
            }
        }
        Feed::Leaf(_) => unreachable!("nonempty trees have node-fed roots"),
    };

    Ok(SliceArrow::Tree(Box::new(MultiArrowTree {
        level: t.level - 1,
        nodes,
        root,
        leaf_objects: sources(&c_out),
        target_object: target(&c_out)?,
    })))
}

fn inner_tree(label: &SliceArrow) -> Result<&MultiArrowTree> {
    match label {
        SliceArrow::Tree(t) => Ok(t),
        SliceArrow::Unit => Err(Error::DimMismatch(
            "level-1 labels have no inner structure".to_string(),
        )),
    }
}

/// Wire resolution through the substitution performed by [`composite`]: all
/// morphism accumulation happens in the object layer one level below the
/// node labels.
struct Resolver<'a> {
    tree: &'a MultiArrowTree,
    elt: EltCategory,
}

impl<'a> Resolver<'a> {
    /// Resolve a wire lying inside the label of outer node `i`.
    fn resolve_within(&self, i: usize, wire: &Wire) -> Result<(Feed, ReindexMor)> {
        let (feed, mor) = match wire.from {
            Feed::Node(s2) => self.resolve_node_output(i, s2)?,
            Feed::Leaf(l) => self.resolve_incoming(i, l)?,
        };
        Ok((feed, self.elt.compose(&mor, &wire.mor)))
    }

    /// The resolved output of inner node `s2` of outer node `i`: a surviving
    /// node of the result, or a deeper chunk's root.
    fn resolve_node_output(&self, i: usize, s2: usize) -> Result<(Feed, ReindexMor)> {
        let wire = &self.tree.nodes[i].slots[s2];
        match wire.from {
            Feed::Leaf(l) => Ok((Feed::Node(find_leaf_index(self.tree, l)), output_component(&wire.mor))),
            Feed::Node(c) => {
                let (feed, mor) = self.resolve_chunk_root(c)?;
                Ok((feed, self.elt.compose(&mor, &output_component(&wire.mor))))
            }
        }
    }

    /// The resolved root of the chunk substituted for outer node `c`.
    fn resolve_chunk_root(&self, c: usize) -> Result<(Feed, ReindexMor)> {
        let inner = inner_tree(&self.tree.nodes[c].label)?;
        match inner.root.from {
            Feed::Node(sr) => {
                let (feed, mor) = self.resolve_node_output(c, sr)?;
                Ok((feed, self.elt.compose(&mor, &inner.root.mor)))
            }
            Feed::Leaf(l) => {
                let (feed, mor) = self.resolve_incoming(c, l)?;
                Ok((feed, self.elt.compose(&mor, &inner.root.mor)))
            }
        }
    }

    /// What flows into boundary leaf `l` of outer node `i`'s label, from the
    /// context the chunk was substituted into.
    fn resolve_incoming(&self, i: usize, l: usize) -> Result<(Feed, ReindexMor)> {
        // Find the consumer of node i's output.
        if let Feed::Node(r) = self.tree.root.from {
            if r == i {
                let gamma = &self.tree.root.mor;
                let a = arity_of_label_composite(&self.tree.nodes[i].label)?;
                let sigma = sigma_of(gamma, a);
                let p = sigma.iter().position(|&x| x == l).ok_or_else(|| {
                    Error::TypeMismatch("root reindexing misses a leaf".to_string())
                })?;
                return Ok((Feed::Leaf(p), input_component(gamma, p)));
            }
        }
        for (p_node, n) in self.tree.nodes.iter().enumerate() {
            for (s, w) in n.slots.iter().enumerate() {
                if w.from == Feed::Node(i) {
                    let gamma = &w.mor;
                    let a = arity_of_label_composite(&self.tree.nodes[i].label)?;
                    let sigma = sigma_of(gamma, a);
                    let q = sigma.iter().position(|&x| x == l).ok_or_else(|| {
                        Error::TypeMismatch("edge reindexing misses a leaf".to_string())
                    })?;
                    let inner = inner_tree(&n.label)?;
                    let (feed, mor) = self.resolve_within(p_node, &inner.nodes[s].slots[q])?;
                    return Ok((feed, self.elt.compose(&mor, &input_component(gamma, q))));
                }
            }
        }
        Err(Error::NotTreeShaped(format!("node {i} feeds nothing")))
    }
}

fn find_leaf_index(tree: &MultiArrowTree, l: usize) -> usize {
    let _ = tree;
    l
}

fn arity_of_label_composite(label: &SliceArrow) -> Result<usize> {
    match label {
        SliceArrow::Unit => Ok(1),
        SliceArrow::Tree(t) => Ok(t.leaf_count()),
    }
}

/// Multicategory composition: replace each node of `outer` by the matching
/// inner tree. Inner targets must equal the outer node labels on the nose.
pub fn node_replace_compose(
    outer: &MultiArrowTree,
    inners: &[SliceArrow],
) -> Result<MultiArrowTree> {
    if inners.len() != outer.nodes.len() {
        return Err(Error::ArityMismatch {
            expected: outer.nodes.len(),
            got: inners.len(),
        });
    }
    let elt = EltCategory;
    let mut inner_trees = Vec::new();
    for (n, inner) in outer.nodes.iter().zip(inners) {
        let t = match inner {
            SliceArrow::Tree(t) => (**t).clone(),
            SliceArrow::Unit => {
                return Err(Error::DimMismatch(
                    "inner arrows must be configurations".to_string(),
                ))
            }
        };
        if composite(&t)? != n.label {
            return Err(Error::ArityMismatch {
                expected: arity(&n.label),
                got: t.leaf_count(),
            });
        }
        inner_trees.push(t);
    }
    let offsets: Vec<usize> = inner_trees
        .iter()
        .scan(0usize, |acc, t| {
            let o = *acc;
            *acc += t.nodes.len();
            Some(o)
        })
        .collect();

    // Resolve the feed arriving at outer slot (i, l): outer wires may pass
    // through empty inner trees.
    fn resolve_outer(
        outer: &MultiArrowTree,
        inner_trees: &[MultiArrowTree],
        offsets: &[usize],
        elt: &EltCategory,
        wire: &Wire,
    ) -> Result<(Feed, ReindexMor)> {
        match wire.from {
            Feed::Leaf(l) => Ok((Feed::Leaf(l), wire.mor.clone())),
            Feed::Node(c) => {
                let (feed, mor) =
                    resolve_inner_root(outer, inner_trees, offsets, elt, c)?;
                Ok((feed, elt.compose(&mor, &wire.mor)))
            }
        }
    }

    fn resolve_inner_root(
        outer: &MultiArrowTree,
        inner_trees: &[MultiArrowTree],
        offsets: &[usize],
        elt: &EltCategory,
        c: usize,
    ) -> Result<(Feed, ReindexMor)> {
        let t = &inner_trees[c];
        match t.root.from {
            Feed::Node(sr) => Ok((Feed::Node(offsets[c] + sr), t.root.mor.clone())),
            Feed::Leaf(l) => {
                // Bare-edge inner: continue through the outer wire feeding
                // outer slot (c, l).
                let (feed, mor) = resolve_outer(
                    outer,
                    inner_trees,
                    offsets,
                    elt,
                    &outer.nodes[c].slots[l],
                )?;
                Ok((feed, elt.compose(&mor, &t.root.mor)))
            }
        }
    }

    let mut nodes = Vec::new();
    for (i, t) in inner_trees.iter().enumerate() {
        for n in &t.nodes {
            let mut slots = Vec::new();
            for w in &n.slots {
                match w.from {
                    Feed::Node(s2) => slots.push(Wire {
                        from: Feed::Node(offsets[i] + s2),
                        mor: w.mor.clone(),
                    }),
                    Feed::Leaf(l) => {
                        let (feed, mor) =
                            resolve_outer(outer, &inner_trees, &offsets, &elt, &outer.nodes[i].slots[l])?;
                        slots.push(Wire {
                            from: feed,
                            mor: elt.compose(&mor, &w.mor),
                        });
                    }
                }
            }
            nodes.push(TreeNode {
                label: n.label.clone(),
                slots,
            });
        }
    }
    let root = match outer.root.from {
        Feed::Leaf(l) => Wire {
            from: Feed::Leaf(l),
            mor: outer.root.mor.clone(),
        },
        Feed::Node(c) => {
            let (feed, mor) = resolve_inner_root(outer, &inner_trees, &offsets, &elt, c)?;
            Wire {
                from: feed,
                mor: elt.compose(&mor, &outer.root.mor),
            }
        }
    };
    let result = MultiArrowTree {
        level: outer.level,
        nodes,
        root,
        leaf_objects: outer.leaf_objects.clone(),
        target_object: outer.target_object.clone(),
    };
    result.validate()?;
    Ok(result)
}

/// The identity configuration on an object: a single node wired straight
/// through.
pub fn corolla(level: usize, label: &SliceArrow) -> Result<MultiArrowTree> {
    let elt = EltCategory;
    let srcs = sources(label);
    let slots = srcs
        .iter()
        .enumerate()
        .map(|(l, o)| Wire {
            from: Feed::Leaf(l),
            mor: elt.identity_obj(o),
        })
        .collect();
    let tgt = target(label)?;
    Ok(MultiArrowTree {
        level,
        nodes: vec![TreeNode {
            label: label.clone(),
            slots,
        }],
        root: Wire {
            from: Feed::Node(0),
            mor: elt.identity_obj(&tgt),
        },
        leaf_objects: srcs,
        target_object: tgt,
    })
}

/// The `level`-fold slice of the terminal symmetric multicategory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymMulticat {
    pub level: usize,
}

/// The symmetric multicategory with one object and one identity arrow.
pub fn terminal_multicat() -> SymMulticat {
    SymMulticat { level: 0 }
}

/// The slice of a multicategory in the tower.
pub fn slice(q: &SymMulticat) -> SymMulticat {
    SymMulticat { level: q.level + 1 }
}

impl SymMulticat {
    /// All arrows with the given sources and target, in deterministic
    /// order. At level 0 the only query with a nonempty answer is the unary
    /// identity.
    pub fn arrows(&self, srcs: &[SliceArrow], tgt: &SliceArrow) -> Result<Vec<SliceArrow>> {
        if self.level == 0 {
            return Err(Error::DimMismatch(
                "the terminal multicategory has the unit arrow only; slice first".to_string(),
            ));
        }
        for s in srcs {
            if level(s) + 1 != self.level {
                return Err(Error::DimMismatch(
                    "sources must sit one level down".to_string(),
                ));
            }
        }
        if level(tgt) + 1 != self.level {
            return Err(Error::DimMismatch(
                "target must sit one level down".to_string(),
            ));
        }
        let elt = EltCategory;
        let m = srcs.len();
        let arities: Vec<usize> = srcs.iter().map(arity).collect();
        let n = arity(tgt);
        let total: usize = arities.iter().sum();
        if m > 0 && total + 1 != m + n {
            return Ok(Vec::new());
        }
        if m == 0 && n != 1 {
            return Ok(Vec::new());
        }
        let leaf_objects = sources(tgt);
        let target_object = target(tgt)?;

        let mut out = Vec::new();
        if m == 0 {
            for mor in elt.hom_obj(&leaf_objects[0], &target_object) {
                let t = MultiArrowTree {
                    level: self.level,
                    nodes: Vec::new(),
                    root: Wire {
                        from: Feed::Leaf(0),
                        mor,
                    },
                    leaf_objects: leaf_objects.clone(),
                    target_object: target_object.clone(),
                };
                if t.validate().is_ok() && composite(&t)? == *tgt {
                    out.push(SliceArrow::Tree(Box::new(t)));
                }
            }
            return Ok(out);
        }

        // Enumerate shapes: a destination for each node's output (the root
        // or another node's slot), then leaves on the remaining slots in
        // every order, then edge morphisms.
        let all_slots: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (0..arities[i]).map(move |s| (i, s)))
            .collect();
        let mut destinations: Vec<Option<(usize, usize)>> = vec![None; m]; // None = root
        let mut used: Vec<Vec<bool>> = arities.iter().map(|&a| vec![false; a]).collect();
        let mut shapes: Vec<Vec<Option<(usize, usize)>>> = Vec::new();
        fn pick_dest(
            i: usize,
            m: usize,
            root_taken: bool,
            all_slots: &[(usize, usize)],
            destinations: &mut Vec<Option<(usize, usize)>>,
            used: &mut Vec<Vec<bool>>,
            shapes: &mut Vec<Vec<Option<(usize, usize)>>>,
        ) {
            if i == m {
                if root_taken {
                    shapes.push(destinations.clone());
                }
                return;
            }
            if !root_taken {
                destinations[i] = None;
                pick_dest(i + 1, m, true, all_slots, destinations, used, shapes);
            }
            for &(p, s) in all_slots {
                if p != i && !used[p][s] {
                    used[p][s] = true;
                    destinations[i] = Some((p, s));
                    pick_dest(i + 1, m, root_taken, all_slots, destinations, used, shapes);
                    used[p][s] = false;
                }
            }
        }
        pick_dest(0, m, false, &all_slots, &mut destinations, &mut used, &mut shapes);

        for shape in shapes {
            // Occupied slots.
            let mut slot_feed: Vec<Vec<Option<Feed>>> =
                arities.iter().map(|&a| vec![None; a]).collect();
            let mut root_feed = None;
            for (i, d) in shape.iter().enumerate() {
                match d {
                    None => root_feed = Some(Feed::Node(i)),
                    Some((p, s)) => slot_feed[*p][*s] = Some(Feed::Node(i)),
                }
            }
            let free: Vec<(usize, usize)> = all_slots
                .iter()
                .copied()
                .filter(|&(p, s)| slot_feed[p][s].is_none())
                .collect();
            if free.len() != n {
                continue;
            }
            let leaf_orders: Vec<Vec<usize>> = if n == 0 {
                vec![Vec::new()]
            } else {
                (0..n).permutations(n).collect()
            };
            for leaf_order in leaf_orders {
                let mut feeds = slot_feed.clone();
                for (slot_idx, &(p, s)) in free.iter().enumerate() {
                    feeds[p][s] = Some(Feed::Leaf(leaf_order[slot_idx]));
                }
                // Morphism choices per wire.
                let feed_obj = |f: &Feed| -> Result<SliceObj> {
                    match f {
                        Feed::Leaf(l) => Ok(leaf_objects[*l].clone()),
                        Feed::Node(c) => target(&srcs[*c]),
                    }
                };
                let mut wire_sites: Vec<(Option<(usize, usize)>, Feed)> = Vec::new();
                let mut choice_sets: Vec<Vec<ReindexMor>> = Vec::new();
                let mut dead = false;
                for (p, a) in arities.iter().enumerate() {
                    let slot_objs = sources(&srcs[p]);
                    for s in 0..*a {
                        let f = feeds[p][s].unwrap();
                        let hom = elt.hom_obj(&feed_obj(&f)?, &slot_objs[s]);
                        if hom.is_empty() {
                            dead = true;
                        }
                        wire_sites.push((Some((p, s)), f));
                        choice_sets.push(hom);
                    }
                }
                let rf = root_feed.expect("one node reaches the root");
                let hom_root = elt.hom_obj(&feed_obj(&rf)?, &target_object);
                if hom_root.is_empty() {
                    dead = true;
                }
                wire_sites.push((None, rf));
                choice_sets.push(hom_root);
                if dead {
                    continue;
                }
                for combo in choice_sets.into_iter().multi_cartesian_product() {
                    let mut nodes: Vec<TreeNode> = srcs
                        .iter()
                        .map(|a| TreeNode {
                            label: a.clone(),
                            slots: Vec::new(),
                        })
                        .collect();
                    let mut root = None;
                    for ((site, f), mor) in wire_sites.iter().zip(combo) {
                        match site {
                            Some((p, _s)) => nodes[*p].slots.push(Wire {
                                from: *f,
                                mor,
                            }),
                            None => {
                                root = Some(Wire {
                                    from: *f,
                                    mor,
                                })
                            }
                        }
                    }
                    let t = MultiArrowTree {
                        level: self.level,
                        nodes,
                        root: root.expect("root wire chosen"),
                        leaf_objects: leaf_objects.clone(),
                        target_object: target_object.clone(),
                    };
                    if t.validate().is_err() {
                        continue;
                    }
                    if composite(&t)? == *tgt {
                        out.push(SliceArrow::Tree(Box::new(t)));
                    }
                }
            }
        }
        Ok(out)
    }
}
