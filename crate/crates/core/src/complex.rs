//! Simplicial complexes, hierarchical-model matrices and generalized
//! Lawrence liftings.
//!
//! Model matrices use one canonical order everywhere. Columns are the table
//! cells `(i_1, …, i_n)` in lexicographic order with the first variable
//! varying slowest. Rows of facets containing vertex 1 come first, ordered
//! by the value of `e_1`, then by facet, then by the remaining margin
//! indices; all other rows follow ordered by facet and then margin index.
//! Facets compare as sorted vertex lists.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::IntMatrix;

pub type Face = Vec<usize>;

/// The distinguished vertex whose table dimension varies.
pub const VARYING_VERTEX: usize = 1;

/// A simplicial complex given by its facets on an explicit ground set.
///
/// The ground set is declared, not inferred: vertices may be absent from
/// every facet (their variable is then summed out by every margin).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Normalizes `faces` and attaches the ground set `vertices`.
    pub fn new(vertices: Vec<usize>, faces: Vec<Face>) -> Result<Self> {
        let mut c = normalize_facets(faces)?;
        let mut vs = vertices;
        vs.sort_unstable();
        vs.dedup();
        if let Some(bad) = c.facets.iter().flatten().find(|v| vs.binary_search(v).is_err()) {
            return Err(Error::DimensionMismatch(format!("vertex {bad} is outside the ground set")));
        }
        c.vertices = vs;
        Ok(c)
    }

    /// Complex on the ground set `1..=n`.
    pub fn on_vertices(n: usize, faces: Vec<Face>) -> Result<Self> {
        Self::new((1..=n).collect(), faces)
    }

    /// The complex `{∅}` on the given ground set.
    pub fn empty_face(vertices: Vec<usize>) -> Self {
        SimplicialComplex { vertices, facets: vec![Vec::new()] }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Number of variables of the ground set.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Union of the facets.
    pub fn support(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        s.into_iter().collect()
    }

    pub fn is_empty_face(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    /// Whether `face` is contained in some facet.
    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// Bracket notation; compact digits when every vertex is below 10.
    pub fn render(&self) -> String {
        let compact = self.vertices.iter().chain(self.facets.iter().flatten()).all(|&v| v <= 9);
        let mut s = String::new();
        for f in &self.facets {
            s.push('[');
            let parts: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            s.push_str(&parts.join(if compact { "" } else { "," }));
            s.push(']');
        }
        s
    }

    /// Renames vertices via `map(old) = new`, re-normalizing.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Result<Self> {
        let faces = self.facets.iter().map(|f| f.iter().map(|&v| map(v)).collect()).collect();
        Self::new(self.vertices.iter().map(|&v| map(v)).collect(), faces)
    }

    /// Restriction to the faces inside `subset`, on that ground set.
    pub fn induced(&self, subset: &[usize]) -> Result<Self> {
        let faces: Vec<Face> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|v| subset.contains(v)).collect())
            .collect();
        Self::new(subset.to_vec(), faces)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {:?}", self.render(), self.vertices)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Drops faces contained in other faces, deduplicates and sorts.
pub fn normalize_facets(faces: Vec<Face>) -> Result<SimplicialComplex> {
    if faces.is_empty() {
        return Err(Error::Parse("a complex needs at least one face".into()));
    }
    let mut sorted: Vec<Face> = faces
        .into_iter()
        .map(|mut f| {
            f.sort_unstable();
            f.dedup();
            f
        })
        .collect();
    sorted.sort();
    sorted.dedup();
    let facets: Vec<Face> = sorted
        .iter()
        .filter(|f| !sorted.iter().any(|g| g != *f && g.len() > f.len() && is_subset(f, g)))
        .cloned()
        .collect();
    let vertices = facets.iter().flatten().copied().max().map_or(Vec::new(), |m| (1..=m).collect());
    Ok(SimplicialComplex { vertices, facets })
}

/// Parses bracket notation such as `[12][13][23]` or `[1,2][12,3]`.
///
/// A group without separators is read digit by digit; a group with commas
/// or whitespace is a list of decimal integers. The ground set is `1..=max`.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut faces = Vec::new();
    let mut rest = trimmed;
    while !rest.is_empty() {
        let Some(after_open) = rest.strip_prefix('[') else {
            return Err(Error::Parse(format!("expected '[' at {rest:?}")));
        };
        let Some(close) = after_open.find(']') else {
            return Err(Error::Parse("unbalanced brackets".into()));
        };
        let group = &after_open[..close];
        if group.contains('[') {
            return Err(Error::Parse("unbalanced brackets".into()));
        }
        faces.push(parse_group(group)?);
        rest = after_open[close + 1..].trim_start();
    }
    if faces.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    if faces.iter().all(Vec::is_empty) {
        return Ok(SimplicialComplex::empty_face(Vec::new()));
    }
    normalize_facets(faces)
}

fn parse_group(group: &str) -> Result<Face> {
    let g = group.trim();
    if g.is_empty() {
        return Ok(Vec::new());
    }
    let has_comma = g.contains(',');
    let has_space = g.contains(char::is_whitespace);
    let vertex = |tok: &str| -> Result<usize> {
        let v: usize = tok.parse().map_err(|_| Error::Parse(format!("bad vertex {tok:?} in [{group}]")))?;
        if v < 1 {
            return Err(Error::Parse(format!("vertex {v} < 1 in [{group}]")));
        }
        Ok(v)
    };
    if !has_comma && !has_space {
        return g.chars().map(|ch| vertex(&ch.to_string())).collect();
    }
    if has_comma {
        let toks: Vec<&str> = g.split(',').map(str::trim).collect();
        if toks.iter().any(|t| t.contains(char::is_whitespace)) {
            return Err(Error::Parse(format!("mixed separators in [{group}]")));
        }
        return toks.into_iter().map(vertex).collect();
    }
    g.split_whitespace().map(vertex).collect()
}

/// `{F ∖ {v} : v ∈ F ∈ Δ}` on the ground set without `v`.
pub fn link(delta: &SimplicialComplex, v: usize) -> Result<SimplicialComplex> {
    let faces: Vec<Face> = delta
        .facets
        .iter()
        .filter(|f| f.contains(&v))
        .map(|f| f.iter().copied().filter(|&x| x != v).collect())
        .collect();
    if faces.is_empty() {
        return Err(Error::VertexNotInComplex(v));
    }
    let vertices: Vec<usize> = delta.vertices.iter().copied().filter(|&x| x != v).collect();
    if faces.iter().all(Vec::is_empty) {
        return Ok(SimplicialComplex::empty_face(vertices));
    }
    SimplicialComplex::new(vertices, faces)
}

/// Facets of `Δ` avoiding `v`, on the ground set without `v`.
pub fn deletion(delta: &SimplicialComplex, v: usize) -> Result<SimplicialComplex> {
    let faces: Vec<Face> = delta.facets.iter().filter(|f| !f.contains(&v)).cloned().collect();
    if faces.is_empty() {
        return Err(Error::EmptyDeletion(v));
    }
    let vertices: Vec<usize> = delta.vertices.iter().copied().filter(|&x| x != v).collect();
    SimplicialComplex::new(vertices, faces)
}

/// Table dimensions aligned with the ground set of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableDims(pub Vec<usize>);

impl TableDims {
    pub fn new(d: Vec<usize>) -> Self {
        TableDims(d)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn cells(&self) -> usize {
        self.0.iter().product()
    }

    /// Parses `2,2,2`.
    pub fn parse(text: &str) -> Result<Self> {
        let d: std::result::Result<Vec<usize>, _> = text.split(',').map(|t| t.trim().parse::<usize>()).collect();
        d.map(TableDims).map_err(|_| Error::Parse(format!("bad dimension list {text:?}")))
    }
}

impl fmt::Display for TableDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Row label `(F, e)`: a facet and an index of its marginal table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowLabel {
    pub facet: Face,
    pub margin: Vec<usize>,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs: Vec<String> = self.facet.iter().map(|v| v.to_string()).collect();
        let es: Vec<String> = self.margin.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}} ({})", fs.join(","), es.join(","))
    }
}

/// The matrix of the margin map of a hierarchical model.
#[derive(Clone, Debug)]
pub struct ModelMatrix {
    pub complex: SimplicialComplex,
    pub dims: TableDims,
    pub matrix: IntMatrix,
    pub row_labels: Vec<RowLabel>,
    /// Cell indices `(i_1, …, i_n)`, 1-based, aligned with the ground set.
    pub col_labels: Vec<Vec<usize>>,
}

/// All index tuples over `dims` in lexicographic order, first slowest.
pub fn index_tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        let mut next = Vec::with_capacity(out.len() * d);
        for prefix in &out {
            for i in 1..=d {
                let mut t = prefix.clone();
                t.push(i);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

pub fn build_model_matrix(delta: &SimplicialComplex, dims: &TableDims) -> Result<ModelMatrix> {
    if dims.0.len() != delta.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} dimensions for {} variables",
            dims.0.len(),
            delta.n()
        )));
    }
    if let Some(bad) = dims.0.iter().find(|&&d| d < 2) {
        return Err(Error::DimensionMismatch(format!("dimension {bad} < 2")));
    }
    let pos = |v: usize| delta.vertices.iter().position(|&x| x == v).expect("facet vertex in ground set");
    let facet_dims = |f: &Face| -> Vec<usize> { f.iter().map(|&v| dims.0[pos(v)]).collect() };

    let mut row_labels = Vec::new();
    let with_one: Vec<&Face> = delta.facets.iter().filter(|f| f.contains(&VARYING_VERTEX)).collect();
    let without_one: Vec<&Face> = delta.facets.iter().filter(|f| !f.contains(&VARYING_VERTEX)).collect();
    if !with_one.is_empty() {
        let d1 = dims.0[pos(VARYING_VERTEX)];
        for e1 in 1..=d1 {
            for f in &with_one {
                // vertex 1 is the smallest possible vertex, so it leads the facet
                for rest in index_tuples(&facet_dims(f)[1..]) {
                    let mut margin = vec![e1];
                    margin.extend(rest);
                    row_labels.push(RowLabel { facet: (*f).clone(), margin });
                }
            }
        }
    }
    for f in without_one {
        for margin in index_tuples(&facet_dims(f)) {
            row_labels.push(RowLabel { facet: f.clone(), margin });
        }
    }

    let col_labels = index_tuples(&dims.0);
    let mut matrix = IntMatrix::zeros(row_labels.len(), col_labels.len());
    for (r, label) in row_labels.iter().enumerate() {
        let positions: Vec<usize> = label.facet.iter().map(|&v| pos(v)).collect();
        for (c, cell) in col_labels.iter().enumerate() {
            if positions.iter().zip(&label.margin).all(|(&p, &e)| cell[p] == e) {
                matrix.set(r, c, Int::one());
            }
        }
    }
    Ok(ModelMatrix { complex: delta.clone(), dims: dims.clone(), matrix, row_labels, col_labels })
}

/// The generalized Lawrence lifting `Λ(A, B, r)`.
#[derive(Clone, Debug)]
pub struct LiftedMatrix {
    pub base_a: IntMatrix,
    pub base_b: IntMatrix,
    pub r: usize,
    /// `(r·d + p) × (r·n)`, columns slice-major.
    pub matrix: IntMatrix,
}

impl LiftedMatrix {
    pub fn slice_width(&self) -> usize {
        self.base_a.cols()
    }
}

/// Column `(j, i)` of the lift (slice `j`, base column `i`) sits at index
/// `j·n + i` and carries `a_i` in row block `j` and `b_i` in the bottom block.
pub fn lawrence_lift(a: &IntMatrix, b: &IntMatrix, r: usize) -> Result<LiftedMatrix> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} columns and B has {}",
            a.cols(),
            b.cols()
        )));
    }
    if r == 0 {
        return Err(Error::Precondition("lifting needs r >= 1".into()));
    }
    let (d, p, n) = (a.rows(), b.rows(), a.cols());
    let mut m = IntMatrix::zeros(r * d + p, r * n);
    for j in 0..r {
        for i in 0..n {
            let col = j * n + i;
            for k in 0..d {
                m.set(j * d + k, col, a.get(k, i).clone());
            }
            for k in 0..p {
                m.set(r * d + k, col, b.get(k, i).clone());
            }
        }
    }
    Ok(LiftedMatrix { base_a: a.clone(), base_b: b.clone(), r, matrix: m })
}

/// The factorization `A_Δ = Λ(A_link, A_del, d_1)` at vertex 1.
#[derive(Clone, Debug)]
pub struct BlockFactorization {
    pub model: ModelMatrix,
    pub link: ModelMatrix,
    /// `None` when every facet contains vertex 1 (B has no rows).
    pub deletion: Option<ModelMatrix>,
    pub lifted: LiftedMatrix,
    /// `model.matrix.row(perm[k]) == lifted.matrix.row(k)` for every `k`.
    pub row_permutation: Vec<usize>,
}

/// Builds `A_Δ` and its lifting form, with the explicit row permutation
/// matching lifted rows to labelled model rows.
pub fn block_factorization(delta: &SimplicialComplex, dims: &TableDims) -> Result<BlockFactorization> {
    let model = build_model_matrix(delta, dims)?;
    let one = delta
        .vertices
        .iter()
        .position(|&v| v == VARYING_VERTEX)
        .ok_or(Error::VertexNotInComplex(VARYING_VERTEX))?;
    if one != 0 {
        return Err(Error::Precondition("vertex 1 must lead the ground set".into()));
    }
    let rest_dims = TableDims(dims.0[1..].to_vec());
    let lk = link(delta, VARYING_VERTEX)?;
    let link_m = build_model_matrix(&lk, &rest_dims)?;
    let del = match deletion(delta, VARYING_VERTEX) {
        Ok(c) => Some(build_model_matrix(&c, &rest_dims)?),
        Err(Error::EmptyDeletion(_)) => None,
        Err(e) => return Err(e),
    };
    let b = del.as_ref().map_or_else(|| IntMatrix::zeros(0, link_m.matrix.cols()), |m| m.matrix.clone());
    let r = dims.0[0];
    let lifted = lawrence_lift(&link_m.matrix, &b, r)?;

    let mut lifted_labels = Vec::with_capacity(lifted.matrix.rows());
    for j in 1..=r {
        for l in &link_m.row_labels {
            let mut facet = vec![VARYING_VERTEX];
            facet.extend(&l.facet);
            let mut margin = vec![j];
            margin.extend(&l.margin);
            lifted_labels.push(RowLabel { facet, margin });
        }
    }
    if let Some(d) = &del {
        lifted_labels.extend(d.row_labels.iter().cloned());
    }
    let row_permutation: Vec<usize> = lifted_labels
        .iter()
        .map(|l| {
            model
                .row_labels
                .iter()
                .position(|m| m == l)
                .ok_or_else(|| Error::CrossCheck(format!("lifted row {l} has no model row")))
        })
        .collect::<Result<_>>()?;
    Ok(BlockFactorization { model, link: link_m, deletion: del, lifted, row_permutation })
}

impl BlockFactorization {
    /// Bit-exact comparison of the permuted model matrix with the lift.
    pub fn rows_agree(&self) -> bool {
        self.model.matrix.rows() == self.lifted.matrix.rows()
            && self.model.matrix.cols() == self.lifted.matrix.cols()
            && self
                .row_permutation
                .iter()
                .enumerate()
                .all(|(k, &p)| self.model.matrix.row(p) == self.lifted.matrix.row(k))
    }
}

/// A decomposition `(Δ₁, S, Δ₂)` of a reducible complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub first: SimplicialComplex,
    pub separator: Face,
    pub second: SimplicialComplex,
}

impl Reduction {
    /// The separator is the empty face (a disjoint union).
    pub fn separator_is_empty(&self) -> bool {
        self.separator.is_empty()
    }
}

fn all_faces(delta: &SimplicialComplex) -> Vec<Face> {
    let mut faces = BTreeSet::new();
    for f in &delta.facets {
        for mask in 0u64..(1u64 << f.len()) {
            let face: Face = f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            faces.insert(face);
        }
    }
    faces.into_iter().collect()
}

/// Searches separators `S ∈ Δ` in lexicographic order (the empty face first)
/// for `Δ = Δ₁ ∪ Δ₂` with `S ∈ Δ₁ ∩ Δ₂` and `|Δ₁| ∩ |Δ₂| = S`. Each side is
/// the set of facets inside `C ∪ S` for a union `C` of components of the
/// vertex graph with `S` removed.
pub fn is_reducible(delta: &SimplicialComplex) -> Option<Reduction> {
    let support = delta.support();
    for s in all_faces(delta) {
        let rest: Vec<usize> = support.iter().copied().filter(|v| !s.contains(v)).collect();
        if rest.is_empty() {
            continue;
        }
        let comps = components_without(delta, &rest);
        if comps.len() < 2 {
            continue;
        }
        let side = |c: &[usize]| -> Vec<Face> {
            delta.facets.iter().filter(|f| f.iter().all(|v| c.contains(v) || s.contains(v))).cloned().collect()
        };
        let holds_s = |faces: &[Face]| faces.iter().any(|f| is_subset(&s, f));
        for (k, first) in comps.iter().enumerate() {
            let f1 = side(first);
            if !holds_s(&f1) {
                continue;
            }
            let second: Vec<usize> = comps.iter().enumerate().filter(|(i, _)| *i != k).flat_map(|(_, c)| c.clone()).collect();
            let f2 = side(&second);
            if !holds_s(&f2) {
                continue;
            }
            let mut v1: Vec<usize> = first.iter().chain(&s).copied().collect();
            v1.sort_unstable();
            let mut v2: Vec<usize> = second.iter().chain(&s).copied().collect();
            v2.sort_unstable();
            let d1 = SimplicialComplex::new(v1, f1).ok()?;
            let d2 = SimplicialComplex::new(v2, f2).ok()?;
            return Some(Reduction { first: d1, separator: s.clone(), second: d2 });
        }
    }
    None
}

/// Connected components of `vertices` under "share a facet", each sorted,
/// ordered by smallest vertex.
fn components_without(delta: &SimplicialComplex, vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for f in &delta.facets {
        let idx: Vec<usize> = f.iter().filter_map(|v| vertices.iter().position(|x| x == v)).collect();
        for w in idx.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..vertices.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(vertices[i]);
    }
    let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
    comps.sort();
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> SimplicialComplex {
        parse_complex(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let t = c("[12][13][23]");
        assert_eq!(t.facets(), &[vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(t.n(), 3);
        let one = c("[1]");
        assert_eq!(one.facets(), &[vec![1]]);
        assert_eq!(one.n(), 1);
        let big = c("[1,2][2][12,3]");
        assert_eq!(big.facets(), &[vec![1, 2], vec![3, 12]]);
        assert_eq!(big.n(), 12);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_complex("").is_err());
        assert!(parse_complex("[12][3").is_err());
        assert!(parse_complex("[12]]").is_err());
        assert!(parse_complex("[0,1]").is_err());
        assert!(parse_complex("[10]").is_err()); // compact digit 0
        assert!(parse_complex("[1,2 3]").is_err());
        assert!(parse_complex("12").is_err());
    }

    #[test]
    fn normalization() {
        let n = normalize_facets(vec![vec![1, 2], vec![1], vec![2, 3]]).unwrap();
        assert_eq!(n.facets(), &[vec![1, 2], vec![2, 3]]);
        let n = normalize_facets(vec![vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(n.facets(), &[vec![1, 2]]);
        let n = normalize_facets(vec![vec![1], vec![2], vec![3], vec![4]]).unwrap();
        assert_eq!(n.facets(), &[vec![1], vec![2], vec![3], vec![4]]);
        assert!(normalize_facets(vec![]).is_err());
    }

    #[test]
    fn links_and_deletions() {
        let cyc = c("[12][14][23][34]");
        assert_eq!(link(&cyc, 1).unwrap().facets(), &[vec![2], vec![4]]);
        assert_eq!(deletion(&cyc, 1).unwrap().facets(), &[vec![2, 3], vec![3, 4]]);
        let tri = c("[12][13][23]");
        assert_eq!(link(&tri, 1).unwrap().facets(), &[vec![2], vec![3]]);
        assert_eq!(deletion(&tri, 1).unwrap().facets(), &[vec![2, 3]]);
        let lk = link(&c("[234][1]"), 1).unwrap();
        assert!(lk.is_empty_face());
        assert_eq!(lk.vertices(), &[2, 3, 4]);
        assert_eq!(deletion(&c("[123][124][134][234]"), 1).unwrap().facets(), &[vec![2, 3, 4]]);
        assert!(matches!(link(&c("[23]"), 1), Err(Error::VertexNotInComplex(1))));
        assert!(matches!(deletion(&c("[12][13]"), 1), Err(Error::EmptyDeletion(1))));
    }

    #[test]
    fn small_model_matrices() {
        let m = build_model_matrix(&c("[1]"), &TableDims(vec![2])).unwrap();
        assert_eq!(m.matrix, IntMatrix::identity(2));
        let e = SimplicialComplex::empty_face(vec![2, 3]);
        let m = build_model_matrix(&e, &TableDims(vec![2, 3])).unwrap();
        assert_eq!(m.matrix, IntMatrix::from_i64_rows(&[&[1, 1, 1, 1, 1, 1]]));
        let ind = build_model_matrix(&c("[1][2]"), &TableDims(vec![2, 2])).unwrap();
        assert_eq!(
            ind.matrix,
            IntMatrix::from_i64_rows(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 0, 1, 0], &[0, 1, 0, 1]])
        );
        assert!(build_model_matrix(&c("[1][2]"), &TableDims(vec![2])).is_err());
    }

    #[test]
    fn column_sums_equal_facet_count() {
        let m = build_model_matrix(&c("[12][13][23][4]"), &TableDims(vec![2, 3, 2, 2])).unwrap();
        for col in m.matrix.columns() {
            assert_eq!(col.norm1(), Int::from(4));
        }
    }

    #[test]
    fn lifts() {
        let i2 = IntMatrix::identity(2);
        let l = lawrence_lift(&i2, &i2, 3).unwrap();
        assert_eq!(l.matrix.rows(), 8);
        assert_eq!(l.matrix.cols(), 6);
        let l1 = lawrence_lift(&i2, &IntMatrix::from_i64_rows(&[&[1, 1]]), 1).unwrap();
        assert_eq!(l1.matrix, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 1]]));
        assert!(lawrence_lift(&i2, &IntMatrix::identity(3), 2).is_err());
    }

    #[test]
    fn reducibility() {
        let r = is_reducible(&c("[12][13][23][24][34]")).unwrap();
        assert_eq!(r.separator, vec![2, 3]);
        assert_eq!(r.first.facets(), &[vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(r.second.facets(), &[vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert!(is_reducible(&c("[12][13][23]")).is_none());
        let r = is_reducible(&c("[12][34]")).unwrap();
        assert!(r.separator_is_empty());
        assert_eq!(r.first.facets(), &[vec![1, 2]]);
        assert_eq!(r.second.facets(), &[vec![3, 4]]);
    }
}
