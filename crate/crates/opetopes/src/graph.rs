//! Kelly-Mac Lane graphs: fixed-point-free pairings of the twisted variable
//! set of a shape boundary, matching opposite variances.
//!
//! Allowability is implemented for the tree shape family
//! `X_{m_1} * ... * X_{m_k} -> X_n`: a pairing is allowable exactly when the
//! induced incidence structure on the node and boundary ports is a tree.

use crate::error::{Error, Result};
use crate::shape::{twisted_variables, variables, Side, ShapeTerm, TwistedVar, VarPath, Variance};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A graph `dom -> cod`: a pairing (stored as an involution on twisted
/// variable indices) without fixed points, mates of opposite variance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    dom: ShapeTerm,
    cod: ShapeTerm,
    pairing: Vec<usize>,
}

impl Graph {
    /// Validating constructor from a list of index pairs into the twisted
    /// variable ordering of `(dom, cod)`.
    pub fn make(dom: ShapeTerm, cod: ShapeTerm, pairs: &[(usize, usize)]) -> Result<Graph> {
        let tw = twisted_variables(&dom, &cod);
        let n = tw.len();
        let mut pairing = vec![usize::MAX; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Incomplete(format!(
                    "pair ({a},{b}) out of range for {n} variables"
                )));
            }
            if a == b {
                return Err(Error::Incomplete(format!("variable {a} paired with itself")));
            }
            if pairing[a] != usize::MAX || pairing[b] != usize::MAX {
                return Err(Error::Incomplete(format!("variable in ({a},{b}) paired twice")));
            }
            if tw[a].variance == tw[b].variance {
                return Err(Error::VarianceClash);
            }
            pairing[a] = b;
            pairing[b] = a;
        }
        if let Some(i) = pairing.iter().position(|&m| m == usize::MAX) {
            return Err(Error::Incomplete(format!("variable {i} unpaired")));
        }
        Ok(Graph { dom, cod, pairing })
    }

    /// The identity graph on `t`: each domain leaf paired with the same
    /// codomain leaf.
    pub fn identity(t: &ShapeTerm) -> Graph {
        let k = t.leaf_count();
        let pairs: Vec<_> = (0..k).map(|i| (i, k + i)).collect();
        Graph::make(t.clone(), t.clone(), &pairs).expect("identity pairing is valid")
    }

    pub fn dom(&self) -> &ShapeTerm {
        &self.dom
    }

    pub fn cod(&self) -> &ShapeTerm {
        &self.cod
    }

    pub fn mate(&self, i: usize) -> usize {
        self.pairing[i]
    }

    pub fn twisted(&self) -> Vec<TwistedVar> {
        twisted_variables(&self.dom, &self.cod)
    }

    /// Canonical pair list, sorted by smaller index.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.pairing.len())
            .filter(|&i| i < self.pairing[i])
            .map(|i| (i, self.pairing[i]))
            .collect();
        out.sort_unstable();
        out
    }

    /// For pair index `p` in the canonical list, the (minus, plus) endpoints.
    pub fn pair_endpoints(&self, p: usize) -> (usize, usize) {
        let tw = self.twisted();
        let (a, b) = self.pairs()[p];
        if tw[a].variance == Variance::Minus {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Composite of `self : T -> S` and `other : S -> U` by tracing
    /// alternating paths through `S`. Fails with [`Error::ClosedLoop`] when
    /// some trace cycles inside `S`.
    pub fn compose(&self, other: &Graph) -> Result<Graph> {
        Ok(self.compose_traced(other)?.0)
    }

    /// As [`Graph::compose`], also returning, for each composite pair in
    /// canonical order, the traversed edge sequence `(graph, pair index)`
    /// read from the minus endpoint of the composite pair.
    pub(crate) fn compose_traced(&self, other: &Graph) -> Result<(Graph, Vec<Vec<(Half, usize)>>)> {
        if self.cod != other.dom {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: middle shapes {} and {} differ",
                self.cod, other.dom
            )));
        }
        let t = variables(&self.dom).len();
        let s = variables(&self.cod).len();
        let u = variables(&other.cod).len();

        // Composite twisted ordering: T-variables 0..t, then U-variables.
        let mut mate = vec![usize::MAX; t + u];
        let mut seen_mid = vec![false; s];
        let mut pair_list: Vec<(usize, usize)> = Vec::new();

        for start in 0..(t + u) {
            if mate[start] != usize::MAX {
                continue;
            }
            let (end, _) = self.walk(other, t, s, start, &mut seen_mid);
            mate[start] = end;
            mate[end] = start;
            let (a, b) = if start < end { (start, end) } else { (end, start) };
            pair_list.push((a, b));
        }
        if seen_mid.iter().any(|v| !v) {
            return Err(Error::ClosedLoop);
        }
        pair_list.sort_unstable();

        let composite = Graph::make(self.dom.clone(), other.cod.clone(), &pair_list)?;

        // Re-walk each canonical pair from its minus endpoint to collect the
        // edges it traverses, in order.
        let tw = composite.twisted();
        let mut traces = Vec::with_capacity(pair_list.len());
        for &(a, b) in &pair_list {
            let from = if tw[a].variance == Variance::Minus { a } else { b };
            let mut dummy = vec![false; s];
            let (_, edges) = self.walk(other, t, s, from, &mut dummy);
            traces.push(edges);
        }
        Ok((composite, traces))
    }

    /// Walk from a composite boundary variable to its composite mate,
    /// recording traversed edges as `(graph half, pair index)`.
    fn walk(
        &self,
        other: &Graph,
        t: usize,
        s: usize,
        start: usize,
        seen_mid: &mut [bool],
    ) -> (usize, Vec<(Half, usize)>) {
        let f_pairs = index_pairs(&self.pairing);
        let g_pairs = index_pairs(&other.pairing);
        let mut edges = Vec::new();
        // (half, index local to that graph's twisted ordering)
        let mut half = if start < t { Half::First } else { Half::Second };
        let mut i = if start < t { start } else { s + (start - t) };
        loop {
            match half {
                Half::First => {
                    edges.push((Half::First, f_pairs[&i]));
                    let j = self.pairing[i];
                    if j < t {
                        return (j, edges);
                    }
                    seen_mid[j - t] = true;
                    half = Half::Second;
                    i = j - t;
                }
                Half::Second => {
                    edges.push((Half::Second, g_pairs[&i]));
                    let j = other.pairing[i];
                    if j >= s {
                        return (t + (j - s), edges);
                    }
                    seen_mid[j] = true;
                    half = Half::First;
                    i = t + j;
                }
            }
        }
    }

    /// Disjoint union over `Tensor(dom, dom') -> Tensor(cod, cod')`.
    pub fn tensor(&self, other: &Graph) -> Graph {
        let dom = ShapeTerm::tensor(self.dom.clone(), other.dom.clone());
        let cod = ShapeTerm::tensor(self.cod.clone(), other.cod.clone());
        let (td, tc) = (variables(&self.dom).len(), variables(&self.cod).len());
        let (ud, _uc) = (variables(&other.dom).len(), variables(&other.cod).len());
        let map_self = |i: usize| if i < td { i } else { td + ud + (i - td) };
        let map_other = |i: usize| if i < ud { td + i } else { td + ud + tc + (i - ud) };
        let mut pairs = Vec::new();
        for (a, b) in self.pairs() {
            pairs.push((map_self(a), map_self(b)));
        }
        for (a, b) in other.pairs() {
            pairs.push((map_other(a), map_other(b)));
        }
        Graph::make(dom, cod, &pairs).expect("tensor of valid graphs is valid")
    }

    /// Canonical n-ary tensor: domains and codomains combined with
    /// [`ShapeTerm::tensor_all`] (unit factors flattened away).
    pub fn tensor_all(graphs: &[Graph]) -> Graph {
        let dom = ShapeTerm::tensor_all(graphs.iter().map(|g| g.dom.clone()));
        let cod = ShapeTerm::tensor_all(graphs.iter().map(|g| g.cod.clone()));
        let index = twisted_index(&dom, &cod);
        let dom_prefixes = tensor_all_prefixes(graphs.iter().map(|g| &g.dom));
        let cod_prefixes = tensor_all_prefixes(graphs.iter().map(|g| &g.cod));
        let mut pairs = Vec::new();
        for (k, g) in graphs.iter().enumerate() {
            let tw = g.twisted();
            let locate = |i: usize| -> usize {
                let v = &tw[i];
                let prefix = match v.side {
                    Side::Dom => &dom_prefixes[k],
                    Side::Cod => &cod_prefixes[k],
                };
                index[&(v.side, prefix.join(&v.path))]
            };
            for (a, b) in g.pairs() {
                pairs.push((locate(a), locate(b)));
            }
        }
        Graph::make(dom, cod, &pairs).expect("tensor of valid graphs is valid")
    }

    /// Re-address `A -> B` as `I -> [A, B]`; the pairing vector is untouched.
    pub fn curry(&self) -> Graph {
        Graph {
            dom: ShapeTerm::Unit,
            cod: ShapeTerm::hom(self.dom.clone(), self.cod.clone()),
            pairing: self.pairing.clone(),
        }
    }

    /// Re-address `I -> [A, B]` as `A -> B`; inverse to [`Graph::curry`].
    pub fn uncurry(&self) -> Result<Graph> {
        if self.dom != ShapeTerm::Unit {
            return Err(Error::ShapeMismatch(format!(
                "uncurry needs unit domain, got {}",
                self.dom
            )));
        }
        match &self.cod {
            ShapeTerm::Hom(a, b) => Ok(Graph {
                dom: (**a).clone(),
                cod: (**b).clone(),
                pairing: self.pairing.clone(),
            }),
            other => Err(Error::ShapeMismatch(format!(
                "uncurry needs a hom codomain, got {other}"
            ))),
        }
    }

    /// DOT rendering: domain leaves on top, codomain leaves on bottom, mate
    /// edges between them.
    pub fn to_dot(&self) -> String {
        let tw = self.twisted();
        let mut s = String::new();
        s.push_str("graph kml {\n  rankdir=TB;\n  node [shape=plaintext];\n");
        let name = |i: usize| -> String {
            match tw[i].side {
                Side::Dom => format!("d{i}"),
                Side::Cod => format!("c{i}"),
            }
        };
        let mut dom_rank = Vec::new();
        let mut cod_rank = Vec::new();
        for (i, v) in tw.iter().enumerate() {
            let label = format!("{}{}", v.variance, path_text(&v.path));
            let _ = writeln!(s, "  {} [label=\"{}\"];", name(i), label);
            match v.side {
                Side::Dom => dom_rank.push(name(i)),
                Side::Cod => cod_rank.push(name(i)),
            }
        }
        if !dom_rank.is_empty() {
            let _ = writeln!(s, "  {{ rank=min; {}; }}", dom_rank.join("; "));
        }
        if !cod_rank.is_empty() {
            let _ = writeln!(s, "  {{ rank=max; {}; }}", cod_rank.join("; "));
        }
        for (a, b) in self.pairs() {
            let _ = writeln!(s, "  {} -- {};", name(a), name(b));
        }
        s.push_str("}\n");
        s
    }
}

fn path_text(p: &VarPath) -> String {
    use crate::shape::Step::*;
    p.0.iter()
        .map(|s| match s {
            TensorLeft => 'l',
            TensorRight => 'r',
            HomDom => 'd',
            HomCod => 'c',
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Half {
    First,
    Second,
}

fn index_pairs(pairing: &[usize]) -> BTreeMap<usize, usize> {
    let mut pairs: Vec<_> = (0..pairing.len())
        .filter(|&i| i < pairing[i])
        .map(|i| (i, pairing[i]))
        .collect();
    pairs.sort_unstable();
    let mut map = BTreeMap::new();
    for (p, (a, b)) in pairs.into_iter().enumerate() {
        map.insert(a, p);
        map.insert(b, p);
    }
    map
}

/// Index of each `(side, path)` in the twisted ordering of `(dom, cod)`.
pub(crate) fn twisted_index(dom: &ShapeTerm, cod: &ShapeTerm) -> BTreeMap<(Side, VarPath), usize> {
    twisted_variables(dom, cod)
        .into_iter()
        .enumerate()
        .map(|(i, v)| ((v.side, v.path), i))
        .collect()
}

/// Path prefixes of the non-unit factors inside `ShapeTerm::tensor_all`.
pub(crate) fn tensor_all_prefixes<'a, I: IntoIterator<Item = &'a ShapeTerm>>(
    factors: I,
) -> Vec<VarPath> {
    use crate::shape::Step;
    let kept: Vec<bool> = factors
        .into_iter()
        .map(|f| *f != ShapeTerm::Unit)
        .collect();
    let n = kept.iter().filter(|k| **k).count();
    let mut prefixes: Vec<Vec<Step>> = Vec::new();
    for j in 0..n {
        // In a left fold, factor j sits under (n-1-j) TensorLefts, then one
        // TensorRight unless it is the first kept factor.
        let mut p = vec![Step::TensorLeft; n.saturating_sub(1 + j)];
        if j > 0 {
            p.push(Step::TensorRight);
        }
        prefixes.push(p);
    }
    let mut out = Vec::new();
    let mut next = 0;
    for k in kept {
        if k {
            out.push(VarPath(prefixes[next].clone()));
            next += 1;
        } else {
            out.push(VarPath(vec![])); // unused: unit factors have no leaves
        }
    }
    out
}

/// The shape data of a tree-family boundary `X_{m_1} * ... * X_{m_k} -> X_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeFrameShape {
    pub node_arities: Vec<usize>,
    pub out_arity: usize,
}

impl TreeFrameShape {
    pub fn dom_shape(&self) -> ShapeTerm {
        ShapeTerm::tensor_all(self.node_arities.iter().map(|&m| ShapeTerm::x(m)))
    }

    pub fn cod_shape(&self) -> ShapeTerm {
        ShapeTerm::x(self.out_arity)
    }
}

/// Read a term as `X_m` (hom of a tensor of generators into the generator),
/// returning `m`. Nested tensor association and interleaved units are
/// accepted.
fn as_x_shape(t: &ShapeTerm) -> Option<usize> {
    match t {
        ShapeTerm::Hom(d, c) => {
            if **c != ShapeTerm::Gen {
                return None;
            }
            let factors = d.tensor_factors();
            if factors.iter().all(|f| **f == ShapeTerm::Gen) {
                Some(factors.len())
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Match an arrow-form boundary against the tree shape family.
pub fn tree_frame_of(dom: &ShapeTerm, cod: &ShapeTerm) -> Option<TreeFrameShape> {
    let out_arity = as_x_shape(cod)?;
    let node_arities = dom
        .tensor_factors()
        .iter()
        .map(|f| as_x_shape(f))
        .collect::<Option<Vec<_>>>()?;
    Some(TreeFrameShape {
        node_arities,
        out_arity,
    })
}

/// Port roles of a tree-family graph in twisted-variable order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    /// Input `slot` of node `node` (a plus variable).
    NodeInput { node: usize, slot: usize },
    /// Output of node `node` (a minus variable).
    NodeOutput { node: usize },
    /// Boundary input `slot` (a minus variable).
    BoundaryInput { slot: usize },
    /// Boundary output (a plus variable).
    BoundaryOutput,
}

/// Role view over an arrow-form tree-family graph.
#[derive(Debug, Clone)]
pub struct TreeView {
    pub shape: TreeFrameShape,
    pub ports: Vec<Port>,
}

impl TreeView {
    /// Build the view for `g` in arrow form; `None` when the boundary is not
    /// in the family.
    pub fn new(g: &Graph) -> Option<TreeView> {
        let shape = tree_frame_of(g.dom(), g.cod())?;
        let mut ports = Vec::new();
        for (node, &m) in shape.node_arities.iter().enumerate() {
            for slot in 0..m {
                ports.push(Port::NodeInput { node, slot });
            }
            ports.push(Port::NodeOutput { node });
        }
        for slot in 0..shape.out_arity {
            ports.push(Port::BoundaryInput { slot });
        }
        ports.push(Port::BoundaryOutput);
        debug_assert_eq!(ports.len(), g.twisted().len());
        Some(TreeView { shape, ports })
    }

    pub fn index_of(&self, port: Port) -> usize {
        self.ports
            .iter()
            .position(|p| *p == port)
            .expect("port in range")
    }

    /// Vertex id for the incidence structure: one vertex per node, one per
    /// boundary input, one for the boundary output.
    fn vertex(&self, port: Port) -> usize {
        let k = self.shape.node_arities.len();
        match port {
            Port::NodeInput { node, .. } | Port::NodeOutput { node } => node,
            Port::BoundaryInput { slot } => k + slot,
            Port::BoundaryOutput => k + self.shape.out_arity,
        }
    }

    fn vertex_count(&self) -> usize {
        self.shape.node_arities.len() + self.shape.out_arity + 1
    }
}

/// Tree criterion for a graph whose uncurried form lies in the tree family:
/// the pairing, read as an incidence structure on node vertices and boundary
/// ports, must be connected and acyclic.
pub fn is_tree_allowable(g: &Graph) -> Result<bool> {
    let arrow = arrow_form(g)?;
    let view = TreeView::new(&arrow).expect("arrow form is in family");
    let mut uf = UnionFind::new(view.vertex_count());
    for (a, b) in arrow.pairs() {
        let (va, vb) = (view.vertex(view.ports[a]), view.vertex(view.ports[b]));
        if !uf.union(va, vb) {
            return Ok(false);
        }
    }
    // Edge count equals vertex count minus one for any pairing of this
    // family, so acyclic already implies a spanning tree.
    Ok(true)
}

/// The arrow form of a tree-family graph: either `g` itself, or its
/// uncurried form when `g` is `I -> [A, B]` with the arrow form in family.
pub fn arrow_form(g: &Graph) -> Result<Graph> {
    if tree_frame_of(g.dom(), g.cod()).is_some() {
        return Ok(g.clone());
    }
    if g.dom() == &ShapeTerm::Unit {
        if let Ok(arrow) = g.uncurry() {
            if tree_frame_of(arrow.dom(), arrow.cod()).is_some() {
                return Ok(arrow);
            }
        }
    }
    Err(Error::WrongShapeFamily(format!(
        "{} -> {}",
        g.dom(),
        g.cod()
    )))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// All allowable pairings for a tree-family boundary, in lexicographic
/// order of the pairing involution.
pub fn enumerate_allowable(shape: &TreeFrameShape, max_leaves: usize) -> Result<Vec<Graph>> {
    let total: usize = shape.node_arities.iter().sum();
    if total > max_leaves {
        return Err(Error::BoundExceeded(format!(
            "{total} node inputs exceed the cap of {max_leaves}"
        )));
    }
    let dom = shape.dom_shape();
    let cod = shape.cod_shape();
    let tw = twisted_variables(&dom, &cod);
    let n = tw.len();
    let plus = tw.iter().filter(|v| v.variance == Variance::Plus).count();
    if plus * 2 != n {
        return Ok(Vec::new());
    }

    let mut mate = vec![usize::MAX; n];
    let mut out = Vec::new();
    fn extend(
        tw: &[TwistedVar],
        mate: &mut Vec<usize>,
        dom: &ShapeTerm,
        cod: &ShapeTerm,
        out: &mut Vec<Graph>,
    ) {
        let i = match mate.iter().position(|&m| m == usize::MAX) {
            None => {
                let pairs: Vec<_> = (0..mate.len())
                    .filter(|&a| a < mate[a])
                    .map(|a| (a, mate[a]))
                    .collect();
                let g = Graph::make(dom.clone(), cod.clone(), &pairs).expect("matching is valid");
                if is_tree_allowable(&g).unwrap_or(false) {
                    out.push(g);
                }
                return;
            }
            Some(i) => i,
        };
        for j in (i + 1)..mate.len() {
            if mate[j] == usize::MAX && tw[j].variance != tw[i].variance {
                mate[i] = j;
                mate[j] = i;
                extend(tw, mate, dom, cod, out);
                mate[i] = usize::MAX;
                mate[j] = usize::MAX;
            }
        }
    }
    extend(&tw, &mut mate, &dom, &cod, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_graph(order: &[usize]) -> Graph {
        // order[p] = node listed at chain position p (0-based), on
        // X_1^(*m) -> X_1.
        let m = order.len();
        let shape = TreeFrameShape {
            node_arities: vec![1; m],
            out_arity: 1,
        };
        let g0 = Graph::identity(&ShapeTerm::Gen); // placeholder to size ports below
        let _ = g0;
        let dom = shape.dom_shape();
        let cod = shape.cod_shape();
        let dummy = Graph::make(
            dom.clone(),
            cod.clone(),
            &trivial_pairs_for(&shape),
        )
        .unwrap();
        let view = TreeView::new(&dummy).unwrap();
        let mut pairs = Vec::new();
        if m == 0 {
            pairs.push((
                view.index_of(Port::BoundaryInput { slot: 0 }),
                view.index_of(Port::BoundaryOutput),
            ));
        } else {
            pairs.push((
                view.index_of(Port::BoundaryInput { slot: 0 }),
                view.index_of(Port::NodeInput { node: order[0], slot: 0 }),
            ));
            for p in 1..m {
                pairs.push((
                    view.index_of(Port::NodeOutput { node: order[p - 1] }),
                    view.index_of(Port::NodeInput { node: order[p], slot: 0 }),
                ));
            }
            pairs.push((
                view.index_of(Port::NodeOutput { node: order[m - 1] }),
                view.index_of(Port::BoundaryOutput),
            ));
        }
        Graph::make(dom, cod, &pairs).unwrap()
    }

    // Any complete matching used only to construct a TreeView.
    fn trivial_pairs_for(shape: &TreeFrameShape) -> Vec<(usize, usize)> {
        let dom = shape.dom_shape();
        let cod = shape.cod_shape();
        let tw = twisted_variables(&dom, &cod);
        let plus: Vec<_> = (0..tw.len())
            .filter(|&i| tw[i].variance == Variance::Plus)
            .collect();
        let minus: Vec<_> = (0..tw.len())
            .filter(|&i| tw[i].variance == Variance::Minus)
            .collect();
        plus.into_iter().zip(minus).collect()
    }

    #[test]
    fn unique_graph_unit_to_hom() {
        let graphs = enumerate_allowable(
            &TreeFrameShape {
                node_arities: vec![],
                out_arity: 1,
            },
            8,
        )
        .unwrap();
        assert_eq!(graphs.len(), 1);
        let g = &graphs[0];
        assert_eq!(g.dom(), &ShapeTerm::Unit);
        assert_eq!(g.cod(), &ShapeTerm::x(1));
    }

    #[test]
    fn identity_on_x1_is_allowable() {
        let g = Graph::identity(&ShapeTerm::x(1));
        assert!(is_tree_allowable(&g).unwrap());
    }

    #[test]
    fn variance_clash_detected() {
        // X_1 -> X_1 pairing the two minus variables.
        let x1 = ShapeTerm::x(1);
        let err = Graph::make(x1.clone(), x1.clone(), &[(1, 2), (0, 3)]).unwrap_err();
        assert_eq!(err, Error::VarianceClash);
    }

    #[test]
    fn incomplete_pairings_rejected() {
        let x1 = ShapeTerm::x(1);
        assert!(matches!(
            Graph::make(x1.clone(), x1.clone(), &[(0, 1)]),
            Err(Error::Incomplete(_))
        ));
        assert!(matches!(
            Graph::make(x1.clone(), x1, &[(0, 1), (0, 3)]),
            Err(Error::Incomplete(_))
        ));
    }

    #[test]
    fn chain_is_tree_and_crossed_is_not() {
        let chain = chain_graph(&[0, 1]);
        assert!(is_tree_allowable(&chain).unwrap());

        // node0 out <-> node1 in, node1 out <-> node0 in: a closed loop.
        let shape = TreeFrameShape {
            node_arities: vec![1, 1],
            out_arity: 1,
        };
        let dummy = Graph::make(shape.dom_shape(), shape.cod_shape(), &trivial_pairs_for(&shape))
            .unwrap();
        let view = TreeView::new(&dummy).unwrap();
        let crossed = Graph::make(
            shape.dom_shape(),
            shape.cod_shape(),
            &[
                (
                    view.index_of(Port::NodeOutput { node: 0 }),
                    view.index_of(Port::NodeInput { node: 1, slot: 0 }),
                ),
                (
                    view.index_of(Port::NodeOutput { node: 1 }),
                    view.index_of(Port::NodeInput { node: 0, slot: 0 }),
                ),
                (
                    view.index_of(Port::BoundaryInput { slot: 0 }),
                    view.index_of(Port::BoundaryOutput),
                ),
            ],
        )
        .unwrap();
        assert!(!is_tree_allowable(&crossed).unwrap());
    }

    #[test]
    fn chain_counting() {
        for m in 0..=5 {
            let shape = TreeFrameShape {
                node_arities: vec![1; m],
                out_arity: 1,
            };
            let graphs = enumerate_allowable(&shape, 8).unwrap();
            let expected: usize = (1..=m).product();
            assert_eq!(graphs.len(), expected.max(1));
        }
    }

    #[test]
    fn wrong_out_arity_gives_no_graphs() {
        let shape = TreeFrameShape {
            node_arities: vec![1, 1],
            out_arity: 2,
        };
        assert!(enumerate_allowable(&shape, 8).unwrap().is_empty());
    }

    #[test]
    fn bound_exceeded() {
        let shape = TreeFrameShape {
            node_arities: vec![5, 5],
            out_arity: 9,
        };
        assert!(matches!(
            enumerate_allowable(&shape, 8),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn three_two_into_four_wiring_is_allowable() {
        // node1 (3-ary), node2 (2-ary); node2's output into node1's first
        // input; out arity 4.
        let shape = TreeFrameShape {
            node_arities: vec![3, 2],
            out_arity: 4,
        };
        let dummy = Graph::make(shape.dom_shape(), shape.cod_shape(), &trivial_pairs_for(&shape))
            .unwrap();
        let view = TreeView::new(&dummy).unwrap();
        let p = |port| view.index_of(port);
        let g = Graph::make(
            shape.dom_shape(),
            shape.cod_shape(),
            &[
                (p(Port::NodeInput { node: 0, slot: 0 }), p(Port::NodeOutput { node: 1 })),
                (p(Port::NodeInput { node: 0, slot: 1 }), p(Port::BoundaryInput { slot: 1 })),
                (p(Port::NodeInput { node: 0, slot: 2 }), p(Port::BoundaryInput { slot: 2 })),
                (p(Port::NodeInput { node: 1, slot: 0 }), p(Port::BoundaryInput { slot: 0 })),
                (p(Port::NodeInput { node: 1, slot: 1 }), p(Port::BoundaryInput { slot: 3 })),
                (p(Port::NodeOutput { node: 0 }), p(Port::BoundaryOutput)),
            ],
        )
        .unwrap();
        assert!(is_tree_allowable(&g).unwrap());
    }

    #[test]
    fn compose_identity_laws() {
        let chain = chain_graph(&[1, 0, 2]);
        let idd = Graph::identity(chain.dom());
        let idc = Graph::identity(chain.cod());
        assert_eq!(idd.compose(&chain).unwrap(), chain);
        assert_eq!(chain.compose(&idc).unwrap(), chain);
    }

    #[test]
    fn compose_detects_closed_loop() {
        // eval-style loop: I -> [1,1] composed with the [1,1] -> I graph that
        // pairs the hom's two leaves again.
        let hom = ShapeTerm::x(1);
        let f = Graph::make(ShapeTerm::Unit, hom.clone(), &[(0, 1)]).unwrap();
        let g = Graph::make(hom, ShapeTerm::Unit, &[(0, 1)]).unwrap();
        assert_eq!(f.compose(&g).unwrap_err(), Error::ClosedLoop);
    }

    #[test]
    fn tensor_of_identities() {
        let a = Graph::identity(&ShapeTerm::x(1));
        let b = Graph::identity(&ShapeTerm::x(2));
        let t = a.tensor(&b);
        assert_eq!(t, Graph::identity(&ShapeTerm::tensor(ShapeTerm::x(1), ShapeTerm::x(2))));
    }

    #[test]
    fn tensor_all_flattens_units() {
        let e = Graph::make(ShapeTerm::Unit, ShapeTerm::Unit, &[]).unwrap();
        let a = Graph::identity(&ShapeTerm::x(1));
        let t = Graph::tensor_all(&[a.clone(), e]);
        assert_eq!(t, a);
    }

    #[test]
    fn curry_uncurry_round_trip() {
        for m in 0..=3 {
            let shape = TreeFrameShape {
                node_arities: vec![1; m],
                out_arity: 1,
            };
            for g in enumerate_allowable(&shape, 8).unwrap() {
                let c = g.curry();
                assert_eq!(c.uncurry().unwrap(), g);
                assert_eq!(c.uncurry().unwrap().curry(), c);
            }
        }
    }

    #[test]
    fn uncurry_rejects_bad_shapes() {
        let g = Graph::identity(&ShapeTerm::x(1));
        assert!(matches!(g.uncurry(), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn unit_to_hom_uncurries_to_identity() {
        let g = Graph::make(ShapeTerm::Unit, ShapeTerm::x(1), &[(0, 1)]).unwrap();
        assert_eq!(g.uncurry().unwrap(), Graph::identity(&ShapeTerm::Gen));
    }

    #[test]
    fn dot_export_is_stable() {
        let g = Graph::identity(&ShapeTerm::x(1));
        let dot = g.to_dot();
        assert!(dot.contains("graph kml"));
        assert!(dot.contains("--"));
        assert_eq!(dot, g.to_dot());
    }
}
