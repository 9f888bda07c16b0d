//! Face maps of an opetope and the relations between composite faces.
//!
//! An opetope of arity m has source faces `s_1 .. s_m` (one per input) and a
//! target face `t`. Words in these generators are read left to right,
//! outermost level first, so `s_i s_j` addresses the j-th source of the
//! i-th source. One-step relations are read off the mate pairs of the
//! configuration graph; two-step relations come from the connected
//! components of the composite used by the validity check, together with
//! the inputs' own one-step relations.

use crate::error::{Error, Result};
use crate::graph::{arrow_form, Port, TreeView};
use crate::opetope::{frame_functor_on_morphism, Opetope};
use std::collections::BTreeMap;
use std::fmt;

/// One face generator: the i-th source (1-based) or the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceLetter {
    Source(usize),
    Target,
}

impl fmt::Display for FaceLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceLetter::Source(i) => write!(f, "s_{i}"),
            FaceLetter::Target => write!(f, "t"),
        }
    }
}

/// A composite face: a word of generators, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacePath(pub Vec<FaceLetter>);

impl FacePath {
    pub fn word(letters: &[FaceLetter]) -> FacePath {
        FacePath(letters.to_vec())
    }

    /// Rendering in the table notation: subscripted sources except at the
    /// innermost level of a length-3 word, where the unique source of an
    /// arrow-level cell prints bare `s`.
    pub fn rendered(&self) -> String {
        let n = self.0.len();
        self.0
            .iter()
            .enumerate()
            .map(|(k, l)| match l {
                FaceLetter::Target => "t".to_string(),
                FaceLetter::Source(i) => {
                    if n == 3 && k == 2 {
                        "s".to_string()
                    } else {
                        format!("s_{i}")
                    }
                }
            })
            .collect()
    }
}

impl fmt::Display for FacePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rendered())
    }
}

/// A partition of face words into equivalence classes, each class and the
/// class list sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub classes: Vec<Vec<FacePath>>,
}

impl RelationSet {
    fn from_classes(mut classes: Vec<Vec<FacePath>>) -> RelationSet {
        for c in &mut classes {
            c.sort();
            c.dedup();
        }
        classes.sort();
        RelationSet { classes }
    }

    /// Classes with at least two members, as sorted sets.
    pub fn nontrivial(&self) -> Vec<Vec<FacePath>> {
        self.classes.iter().filter(|c| c.len() > 1).cloned().collect()
    }

    /// Whether two words are related.
    pub fn related(&self, a: &FacePath, b: &FacePath) -> bool {
        self.classes.iter().any(|c| c.contains(a) && c.contains(b))
    }
}

/// The face generators of an opetope of dimension >= 1: one source per
/// input, in listed order, then the target.
pub fn faces(x: &Opetope) -> Result<Vec<FaceLetter>> {
    if x.dim() == 0 {
        return Err(Error::DimMismatch("the point has no faces".to_string()));
    }
    let mut out: Vec<FaceLetter> = (1..=x.arity()).map(FaceLetter::Source).collect();
    out.push(FaceLetter::Target);
    Ok(out)
}

/// The face addressed by a generator.
pub fn face_object(x: &Opetope, letter: FaceLetter) -> Result<Opetope> {
    match (x, letter) {
        (Opetope::Arrow, _) => Ok(Opetope::Point),
        (Opetope::Cell(c), FaceLetter::Source(i)) => c
            .inputs
            .get(i.checked_sub(1).unwrap_or(usize::MAX))
            .cloned()
            .ok_or_else(|| Error::DimMismatch(format!("no source {i}"))),
        (Opetope::Cell(c), FaceLetter::Target) => Ok(c.output.clone()),
        (Opetope::Point, _) => Err(Error::DimMismatch("the point has no faces".to_string())),
    }
}

/// Port-to-word addressing over a configuration's tree view.
fn port_word(port: Port) -> FacePath {
    match port {
        Port::NodeInput { node, slot } => FacePath(vec![
            FaceLetter::Source(node + 1),
            FaceLetter::Source(slot + 1),
        ]),
        Port::NodeOutput { node } => {
            FacePath(vec![FaceLetter::Source(node + 1), FaceLetter::Target])
        }
        Port::BoundaryInput { slot } => {
            FacePath(vec![FaceLetter::Target, FaceLetter::Source(slot + 1)])
        }
        Port::BoundaryOutput => FacePath(vec![FaceLetter::Target, FaceLetter::Target]),
    }
}

/// One-step relations: for each mate pair of the configuration graph, the
/// two length-2 words addressing the shared lower cell are equal.
pub fn relations_one_step(x: &Opetope) -> Result<RelationSet> {
    let c = x.cell().ok_or_else(|| {
        Error::DimMismatch("one-step relations need dimension >= 2".to_string())
    })?;
    let arrow = arrow_form(&c.theta.underlying)?;
    let view = TreeView::new(&arrow).expect("configurations are tree shaped");
    let classes = arrow
        .pairs()
        .into_iter()
        .map(|(a, b)| vec![port_word(view.ports[a]), port_word(view.ports[b])])
        .collect();
    Ok(RelationSet::from_classes(classes))
}

/// Two-step relations for an opetope of dimension >= 3: equivalence classes
/// of length-3 words generated by the configuration's mate pairs extended
/// along their edge labels' frame graphs, together with the inputs' own
/// one-step relations prefixed by the corresponding source.
pub fn relations_deep(x: &Opetope) -> Result<RelationSet> {
    let c = x.cell().ok_or_else(|| {
        Error::DimMismatch("deep relations need dimension >= 3".to_string())
    })?;
    if x.dim() < 3 {
        return Err(Error::DimMismatch(
            "deep relations need dimension >= 3".to_string(),
        ));
    }

    let mut uf: BTreeMap<FacePath, FacePath> = BTreeMap::new();
    fn find(uf: &mut BTreeMap<FacePath, FacePath>, w: &FacePath) -> FacePath {
        let parent = match uf.get(w) {
            None => {
                uf.insert(w.clone(), w.clone());
                return w.clone();
            }
            Some(p) => p.clone(),
        };
        if parent == *w {
            return parent;
        }
        let root = find(uf, &parent);
        uf.insert(w.clone(), root.clone());
        root
    }
    fn union(uf: &mut BTreeMap<FacePath, FacePath>, a: &FacePath, b: &FacePath) {
        let (ra, rb) = (find(uf, a), find(uf, b));
        if ra != rb {
            uf.insert(ra, rb);
        }
    }

    // Seed the universe: every length-3 word over the cell.
    let mut words = Vec::new();
    {
        let top = faces(x)?;
        for l1 in top {
            let mid = face_object(x, l1)?;
            for l2 in faces(&mid)? {
                let bottom = face_object(&mid, l2)?;
                for l3 in faces(&bottom)? {
                    words.push(FacePath(vec![l1, l2, l3]));
                }
            }
        }
        for w in &words {
            find(&mut uf, w);
        }
    }

    // Inputs' own one-step relations, prefixed by their source letter.
    for (i, input) in c.inputs.iter().enumerate() {
        for class in relations_one_step(input)?.classes {
            let first = &class[0];
            for other in &class[1..] {
                let mut a = vec![FaceLetter::Source(i + 1)];
                a.extend(first.0.iter().copied());
                let mut b = vec![FaceLetter::Source(i + 1)];
                b.extend(other.0.iter().copied());
                union(&mut uf, &FacePath(a), &FacePath(b));
            }
        }
    }

    // The configuration's mate pairs, extended one level along their edge
    // labels' frame graphs.
    let arrow = arrow_form(&c.theta.underlying)?;
    let view = TreeView::new(&arrow).expect("configurations are tree shaped");
    for (p, (a, b)) in arrow.pairs().into_iter().enumerate() {
        let tw = arrow.twisted();
        let (neg, pos) = if tw[a].variance == crate::shape::Variance::Minus {
            (a, b)
        } else {
            (b, a)
        };
        let wneg = port_word(view.ports[neg]);
        let wpos = port_word(view.ports[pos]);
        let label = &c.theta.labels[p];
        let fg = frame_functor_on_morphism(label)?;
        let ltw = fg.underlying.twisted();
        let letter_for = |leaf_pos: usize, arity: usize| -> FaceLetter {
            if leaf_pos < arity {
                FaceLetter::Source(leaf_pos + 1)
            } else {
                FaceLetter::Target
            }
        };
        let src_arity = label.source().arity();
        let tgt_arity = label.target().arity();
        for (la, lb) in fg.underlying.pairs() {
            // Domain side of the frame graph sits at the minus endpoint.
            let attach = |i: usize| -> FacePath {
                let v = &ltw[i];
                match v.side {
                    crate::shape::Side::Dom => {
                        let leaf_pos = fg
                            .underlying
                            .dom()
                            .leaves()
                            .iter()
                            .position(|p| *p == v.path)
                            .expect("leaf present");
                        let mut w = wneg.0.clone();
                        w.push(letter_for(leaf_pos, src_arity));
                        FacePath(w)
                    }
                    crate::shape::Side::Cod => {
                        let leaf_pos = fg
                            .underlying
                            .cod()
                            .leaves()
                            .iter()
                            .position(|p| *p == v.path)
                            .expect("leaf present");
                        let mut w = wpos.0.clone();
                        w.push(letter_for(leaf_pos, tgt_arity));
                        FacePath(w)
                    }
                }
            };
            let (wa, wb) = (attach(la), attach(lb));
            union(&mut uf, &wa, &wb);
        }
    }

    let mut groups: BTreeMap<FacePath, Vec<FacePath>> = BTreeMap::new();
    for w in words {
        let root = find(&mut uf, &w);
        groups.entry(root).or_default().push(w);
    }
    Ok(RelationSet::from_classes(groups.into_values().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opetope::{arrow, chain, chain_with_positions};
    use crate::samples::sample_3opetope;

    fn s(i: usize) -> FaceLetter {
        FaceLetter::Source(i)
    }
    fn t() -> FaceLetter {
        FaceLetter::Target
    }

    #[test]
    fn arrow_faces() {
        assert_eq!(faces(&arrow()).unwrap(), vec![s(1), t()]);
    }

    #[test]
    fn nullary_cell_has_only_target() {
        assert_eq!(faces(&chain(0)).unwrap(), vec![t()]);
    }

    #[test]
    fn three_ary_faces() {
        assert_eq!(faces(&chain(3)).unwrap(), vec![s(1), s(2), s(3), t()]);
    }

    #[test]
    fn one_step_relations_of_unary_cell() {
        // The 1-ary 2-opetope wires its node straight through.
        let rs = relations_one_step(&chain(1)).unwrap();
        let expected = RelationSet::from_classes(vec![
            vec![FacePath::word(&[s(1), s(1)]), FacePath::word(&[t(), s(1)])],
            vec![FacePath::word(&[s(1), t()]), FacePath::word(&[t(), t()])],
        ]);
        assert_eq!(rs, expected);
    }

    #[test]
    fn one_step_relations_count_mate_pairs() {
        for op in [chain(2), chain_with_positions(&[1, 0]), chain(3)] {
            let rs = relations_one_step(&op).unwrap();
            assert_eq!(
                rs.classes.len(),
                op.theta().unwrap().underlying.pairs().len()
            );
        }
    }

    #[test]
    fn sample_one_step_table() {
        let rs = relations_one_step(&sample_3opetope()).unwrap();
        let expected = RelationSet::from_classes(vec![
            vec![FacePath::word(&[s(1), s(1)]), FacePath::word(&[s(2), t()])],
            vec![FacePath::word(&[s(1), s(2)]), FacePath::word(&[t(), s(2)])],
            vec![FacePath::word(&[s(1), s(3)]), FacePath::word(&[t(), s(3)])],
            vec![FacePath::word(&[s(1), t()]), FacePath::word(&[t(), t()])],
            vec![FacePath::word(&[s(2), s(1)]), FacePath::word(&[t(), s(1)])],
            vec![FacePath::word(&[s(2), s(2)]), FacePath::word(&[t(), s(4)])],
        ]);
        assert_eq!(rs, expected);
    }

    #[test]
    fn sample_deep_table() {
        let rs = relations_deep(&sample_3opetope()).unwrap();
        let word = |ls: &[FaceLetter]| FacePath::word(ls);
        let expected = RelationSet::from_classes(vec![
            vec![
                word(&[t(), s(1), s(1)]),
                word(&[s(2), s(1), s(1)]),
                word(&[s(2), s(2), t()]),
                word(&[t(), s(4), t()]),
            ],
            vec![
                word(&[t(), s(1), t()]),
                word(&[s(2), s(1), t()]),
                word(&[s(2), t(), t()]),
                word(&[s(1), s(1), t()]),
                word(&[s(1), s(2), s(1)]),
                word(&[t(), s(2), s(1)]),
            ],
            vec![
                word(&[t(), s(2), t()]),
                word(&[s(1), s(2), t()]),
                word(&[s(1), s(3), s(1)]),
                word(&[t(), s(3), s(1)]),
            ],
            vec![
                word(&[t(), s(3), t()]),
                word(&[s(1), s(3), t()]),
                word(&[s(1), t(), t()]),
                word(&[t(), t(), t()]),
            ],
            vec![
                word(&[t(), s(4), s(1)]),
                word(&[s(2), s(2), s(1)]),
                word(&[s(2), t(), s(1)]),
                word(&[s(1), s(1), s(1)]),
                word(&[s(1), t(), s(1)]),
                word(&[t(), t(), s(1)]),
            ],
        ]);
        assert_eq!(rs.classes.len(), 5);
        assert_eq!(rs, expected);
    }

    #[test]
    fn rendering_matches_table_notation() {
        let w = FacePath::word(&[t(), s(1), s(1)]);
        assert_eq!(w.rendered(), "ts_1s");
        let w = FacePath::word(&[s(2), s(2), t()]);
        assert_eq!(w.rendered(), "s_2s_2t");
        let w = FacePath::word(&[s(1), s(1)]);
        assert_eq!(w.rendered(), "s_1s_1");
    }
}
