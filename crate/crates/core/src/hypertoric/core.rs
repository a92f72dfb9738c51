//! Extended core pieces `Δ_A`, circle-fixed components and the gradient flow.
//!
//! On the piece indexed by `A` (coordinates `z_i` vanish for `i ∈ A`, `w_i`
//! for `i ∉ A`) the circle moment map is `Φ = Σ_{i∈A}(v·a_i + r_i) ≤ 0`, and
//! the limit `τ → ∞` lands on the face minimizing `⟨v, Σ_{i∈A} a_i⟩`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::Rational;
use crate::error::Result;
use crate::polyhedra::{self, Polyhedron};

use super::Arrangement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceStatus {
    Bounded,
    Unbounded,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorePiece {
    /// 1-based indices.
    pub a: Vec<usize>,
    pub mask: u64,
    pub status: PieceStatus,
    /// `A = ∅`: the toric variety itself.
    pub is_toric: bool,
    pub functional: Vec<i64>,
    pub polytope: Polyhedron,
    /// Vertices, sorted; only for bounded pieces.
    pub vertices: Vec<Vec<Rational>>,
    pub volume: Option<Rational>,
    /// Hyperplanes (1-based) containing the face minimizing the functional.
    pub minimizing_face: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreReport {
    pub n: usize,
    pub d: usize,
    pub delta_bounded: bool,
    /// Nonempty pieces ordered by bitmask.
    pub pieces: Vec<CorePiece>,
    pub warnings: Vec<String>,
}

impl CoreReport {
    pub fn bounded(&self) -> impl Iterator<Item = &CorePiece> {
        self.pieces.iter().filter(|p| p.status == PieceStatus::Bounded)
    }
}

fn mask_to_set(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn functional(arr: &Arrangement, a: &[usize]) -> Vec<i64> {
    (0..arr.d)
        .map(|j| a.iter().map(|&i| arr.normals[i][j]).sum())
        .collect()
}

/// Hyperplanes through `v` (0-based).
fn tight(arr: &Arrangement, v: &[Rational]) -> Vec<usize> {
    (0..arr.n()).filter(|&i| arr.value(i, v).is_zero()).collect()
}

fn dot_i(f: &[i64], v: &[Rational]) -> Rational {
    f.iter()
        .zip(v)
        .fold(Rational::zero(), |acc, (&a, x)| acc + x * &Rational::from_int(a))
}

/// Classifies all `2^n` sign subsets.
pub fn extended_core(arr: &Arrangement) -> Result<CoreReport> {
    arr.require_simple()?;
    let n = arr.n();
    let mut warnings = Vec::new();
    let delta = arr.delta();
    let delta_bounded = polyhedra::feasible(&delta) && polyhedra::bounded(&delta)?;
    if !delta_bounded {
        warnings.push("Δ is empty or unbounded: the circle moment map is not proper".into());
    }
    let mut pieces = Vec::new();
    for mask in 0..(1u64 << n) {
        let a = mask_to_set(mask, n);
        let p = arr.region(&a);
        if !polyhedra::feasible(&p) {
            continue;
        }
        let bounded = polyhedra::bounded(&p)?;
        let func = functional(arr, &a);
        let (vertices, volume, minimizing_face) = if bounded {
            let vs = polyhedra::vertices(&p)?;
            let vol = polyhedra::volume(&p)?;
            let best = vs
                .iter()
                .map(|v| dot_i(&func, v))
                .min()
                .expect("bounded nonempty polytope has a vertex");
            let top: Vec<&Vec<Rational>> = vs.iter().filter(|v| dot_i(&func, v) == best).collect();
            let face: Vec<usize> = (0..n)
                .filter(|&i| top.iter().all(|v| arr.value(i, v).is_zero()))
                .map(|i| i + 1)
                .collect();
            (vs, Some(vol), Some(face))
        } else {
            (Vec::new(), None, None)
        };
        pieces.push(CorePiece {
            a: a.iter().map(|i| i + 1).collect(),
            mask,
            status: if bounded {
                PieceStatus::Bounded
            } else {
                PieceStatus::Unbounded
            },
            is_toric: mask == 0,
            functional: func,
            polytope: p,
            vertices,
            volume,
            minimizing_face,
        });
    }
    Ok(CoreReport {
        n,
        d: arr.d,
        delta_bounded,
        pieces,
        warnings,
    })
}

/// A face `E_A^B` on which `Φ` is constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedFace {
    /// 1-based.
    pub a: Vec<usize>,
    /// 1-based hyperplanes cutting out the face.
    pub b: Vec<usize>,
    pub dim: usize,
    pub phi: Rational,
    pub component: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedComponent {
    pub index: usize,
    pub dim: usize,
    pub phi: Rational,
    pub vertices: Vec<Vec<Rational>>,
    /// Bounded pieces (1-based `A`) whose minimizing face lies here.
    pub core_pieces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedReport {
    /// One entry per bounded piece: the face its generic points flow to.
    pub minimizing: Vec<FixedFace>,
    /// Maximal fixed faces of positive dimension, plus all vertices.
    pub faces: Vec<FixedFace>,
    pub components: Vec<FixedComponent>,
    /// Whether bounded pieces and components correspond one to one.
    pub bijective: bool,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Vertices of the bounded complex and, per bounded piece, its edges.
struct Skeleton {
    vertices: Vec<Vec<Rational>>,
    phi: Vec<Rational>,
    /// (piece mask, vertex ids of the piece)
    pieces: Vec<(u64, Vec<usize>)>,
    /// (piece mask, u, v) with u < v
    edges: Vec<(u64, usize, usize)>,
}

fn skeleton(arr: &Arrangement, core: &CoreReport) -> Skeleton {
    let mut ids: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
    for p in core.bounded() {
        for v in &p.vertices {
            let next = ids.len();
            ids.entry(v.clone()).or_insert(next);
        }
    }
    // renumber in lexicographic order
    let vertices: Vec<Vec<Rational>> = ids.keys().cloned().collect();
    let index: BTreeMap<&Vec<Rational>, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let phi: Vec<Rational> = vertices
        .iter()
        .map(|v| {
            (0..arr.n()).fold(Rational::zero(), |acc, i| {
                let s = arr.value(i, v);
                if s.is_negative() {
                    acc + s
                } else {
                    acc
                }
            })
        })
        .collect();
    let mut pieces = Vec::new();
    let mut edges = Vec::new();
    for p in core.bounded() {
        let vid: Vec<usize> = p.vertices.iter().map(|v| index[v]).collect();
        let tights: Vec<Vec<usize>> = p.vertices.iter().map(|v| tight(arr, v)).collect();
        for x in 0..vid.len() {
            for y in x + 1..vid.len() {
                let common: Vec<usize> = tights[x].iter().copied().filter(|i| tights[y].contains(i)).collect();
                if common.is_empty() || arr.rank_of(&common) != arr.d - 1 {
                    continue;
                }
                let on_face = tights.iter().filter(|t| common.iter().all(|i| t.contains(i))).count();
                if on_face == 2 {
                    edges.push((p.mask, vid[x].min(vid[y]), vid[x].max(vid[y])));
                }
            }
        }
        pieces.push((p.mask, vid));
    }
    Skeleton {
        vertices,
        phi,
        pieces,
        edges,
    }
}

/// Fixed faces, their connected components and the piece-to-component map.
pub fn fixed_components(arr: &Arrangement, core: &CoreReport) -> FixedReport {
    let sk = skeleton(arr, core);
    let nv = sk.vertices.len();
    let mut dsu = Dsu((0..nv).collect());
    for &(_, u, v) in &sk.edges {
        if sk.phi[u] == sk.phi[v] {
            dsu.union(u, v);
        }
    }
    let mut roots: Vec<usize> = (0..nv).map(|v| dsu.find(v)).collect();
    let mut order: Vec<usize> = roots.clone();
    order.sort_unstable();
    order.dedup();
    let comp_of = |r: usize| order.binary_search(&r).unwrap();
    for r in roots.iter_mut() {
        *r = comp_of(*r);
    }

    // maximal fixed faces per bounded piece: subsets of the d tight
    // hyperplanes at each vertex index the faces through it
    let mut faces: Vec<FixedFace> = Vec::new();
    let mut comp_dim = vec![0usize; order.len()];
    for (mask, vid) in &sk.pieces {
        let a = mask_to_set(*mask, arr.n());
        let tights: Vec<Vec<usize>> = vid.iter().map(|&v| tight(arr, &sk.vertices[v])).collect();
        let mut found: Vec<(Vec<usize>, usize)> = Vec::new();
        for t in &tights {
            for sub in 0u32..(1 << t.len()) {
                let b: Vec<usize> = (0..t.len()).filter(|k| sub >> k & 1 == 1).map(|k| t[k]).collect();
                let members: Vec<usize> = (0..vid.len())
                    .filter(|&j| b.iter().all(|i| tights[j].contains(i)))
                    .map(|j| vid[j])
                    .collect();
                let constant = members.iter().all(|&m| sk.phi[m] == sk.phi[members[0]]);
                if constant && !found.iter().any(|(bb, _)| bb == &b) {
                    found.push((b, members[0]));
                }
            }
        }
        // keep maximal ones (smallest B), and every vertex
        let all = found.clone();
        for (b, rep) in all {
            let dim = arr.d - arr.rank_of(&b);
            let maximal = !found.iter().any(|(b2, _)| b2.len() < b.len() && b2.iter().all(|i| b.contains(i)));
            if dim == 0 || maximal {
                let c = roots[rep];
                comp_dim[c] = comp_dim[c].max(dim);
                faces.push(FixedFace {
                    a: a.iter().map(|i| i + 1).collect(),
                    b: b.iter().map(|i| i + 1).collect(),
                    dim,
                    phi: sk.phi[rep].clone(),
                    component: c,
                });
            }
        }
    }
    faces.sort_by(|x, y| (x.component, &x.a, &x.b).cmp(&(y.component, &y.a, &y.b)));
    faces.dedup();

    let mut minimizing = Vec::new();
    let mut core_pieces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); order.len()];
    for p in core.bounded() {
        let b: Vec<usize> = p.minimizing_face.clone().unwrap_or_default();
        let b0: Vec<usize> = b.iter().map(|i| i - 1).collect();
        let rep = p
            .vertices
            .iter()
            .find(|v| b0.iter().all(|&i| arr.value(i, v).is_zero()))
            .expect("minimizing face has a vertex");
        let vidx = sk.vertices.binary_search(rep).unwrap();
        let c = roots[vidx];
        core_pieces[c].push(p.a.clone());
        let dim = arr.d - arr.rank_of(&b0);
        minimizing.push(FixedFace {
            a: p.a.clone(),
            b,
            dim,
            phi: sk.phi[vidx].clone(),
            component: c,
        });
    }

    let components: Vec<FixedComponent> = (0..order.len())
        .map(|c| {
            let vs: Vec<Vec<Rational>> = (0..nv).filter(|&v| roots[v] == c).map(|v| sk.vertices[v].clone()).collect();
            let phi = sk.phi[(0..nv).find(|&v| roots[v] == c).unwrap()].clone();
            FixedComponent {
                index: c,
                dim: comp_dim[c],
                phi,
                vertices: vs,
                core_pieces: core_pieces[c].clone(),
            }
        })
        .collect();
    let bijective = components.iter().all(|c| c.core_pieces.len() == 1);
    FixedReport {
        minimizing,
        faces,
        components,
        bijective,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowEdge {
    pub from: usize,
    pub to: usize,
    /// 1-based `A` of a piece containing the edge.
    pub a: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowGraph {
    pub vertices: Vec<Vec<Rational>>,
    pub phi: Vec<Rational>,
    pub vertex_component: Vec<usize>,
    /// Edges of the bounded complex with `Φ(from) > Φ(to)`.
    pub vertex_edges: Vec<FlowEdge>,
    /// Quotient by fixed components.
    pub component_edges: Vec<(usize, usize)>,
    pub components: Vec<FixedComponent>,
}

pub fn flow_graph(arr: &Arrangement, core: &CoreReport, fixed: &FixedReport) -> FlowGraph {
    let sk = skeleton(arr, core);
    let vertex_component: Vec<usize> = sk
        .vertices
        .iter()
        .map(|v| {
            fixed
                .components
                .iter()
                .find(|c| c.vertices.contains(v))
                .map(|c| c.index)
                .expect("every vertex is fixed")
        })
        .collect();
    let mut vertex_edges: Vec<FlowEdge> = Vec::new();
    for &(mask, u, v) in &sk.edges {
        if sk.phi[u] == sk.phi[v] {
            continue;
        }
        let (from, to) = if sk.phi[u] > sk.phi[v] { (u, v) } else { (v, u) };
        if vertex_edges.iter().any(|e| e.from == from && e.to == to) {
            continue;
        }
        vertex_edges.push(FlowEdge {
            from,
            to,
            a: mask_to_set(mask, arr.n()).iter().map(|i| i + 1).collect(),
        });
    }
    vertex_edges.sort_by_key(|x| (x.from, x.to));
    let mut component_edges: Vec<(usize, usize)> = vertex_edges
        .iter()
        .map(|e| (vertex_component[e.from], vertex_component[e.to]))
        .filter(|(a, b)| a != b)
        .collect();
    component_edges.sort_unstable();
    component_edges.dedup();
    FlowGraph {
        vertices: sk.vertices,
        phi: sk.phi,
        vertex_component,
        vertex_edges,
        component_edges,
        components: fixed.components.clone(),
    }
}

impl FlowGraph {
    /// Kahn's algorithm on the vertex-level graph.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for e in &self.vertex_edges {
            indeg[e.to] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for e in self.vertex_edges.iter().filter(|e| e.from == v) {
                indeg[e.to] -= 1;
                if indeg[e.to] == 0 {
                    stack.push(e.to);
                }
            }
        }
        seen == n
    }

    /// Graphviz rendering: one cluster per fixed component.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph flow {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n");
        for c in &self.components {
            s.push_str(&format!(
                "  subgraph cluster_{} {{\n    label=\"F{} dim {} Φ={}\";\n",
                c.index, c.index, c.dim, c.phi
            ));
            for (v, _) in self.vertices.iter().enumerate().filter(|(v, _)| self.vertex_component[*v] == c.index) {
                let coords: Vec<String> = self.vertices[v].iter().map(|x| x.to_string()).collect();
                s.push_str(&format!("    v{v} [label=\"({})\"];\n", coords.join(",")));
            }
            s.push_str("  }\n");
        }
        for e in &self.vertex_edges {
            let label: Vec<String> = e.a.iter().map(|i| i.to_string()).collect();
            s.push_str(&format!("  v{} -> v{} [label=\"{{{}}}\"];\n", e.from, e.to, label.join(",")));
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn fig2(r: [i64; 4]) -> Arrangement {
        Arrangement::from_ints(2, &[&[1, 1], &[1, 0], &[-1, 0], &[0, -1]], &r).unwrap()
    }

    #[test]
    fn fixture_core_counts() {
        let a = fig2([1, 0, 1, 0]);
        let core = extended_core(&a).unwrap();
        assert!(core.pieces[0].is_toric);
        assert_eq!(core.pieces[0].mask, 0);
        // two bounded regions: the strip quadrilateral and the triangle left of it
        assert_eq!(core.bounded().count(), 2);
        let total: Rational = core.bounded().map(|p| p.volume.clone().unwrap()).fold(Rational::zero(), |a, b| a + b);
        assert!(total.is_positive());
        let all = (1u64 << 4) - 1;
        assert!(core.pieces.iter().all(|p| p.mask != all));
    }

    #[test]
    fn fixture_fixed_and_flow() {
        let a = fig2([0, 1, 1, 0]);
        let core = extended_core(&a).unwrap();
        let fixed = fixed_components(&a, &core);
        // smooth: bounded pieces and fixed components correspond
        assert_eq!(fixed.components.len(), core.bounded().count());
        assert!(fixed.bijective);
        let flow = flow_graph(&a, &core, &fixed);
        assert!(flow.is_acyclic());
        // the upper triangle Δ_{1,4} flows to the edge minimizing ⟨v, a1 + a4⟩ = v1
        let t = core.pieces.iter().find(|p| p.a == vec![1, 4]).unwrap();
        assert_eq!(t.vertices, vec![vec![rat(-1, 1), rat(0, 1)], vec![rat(-1, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]]);
        assert_eq!(t.minimizing_face, Some(vec![2]));
        let edge = fixed.components.iter().find(|c| c.dim == 1).unwrap();
        assert_eq!(edge.core_pieces, vec![vec![1, 4]]);
        assert_eq!(edge.phi, rat(-1, 1));
        let dot = flow.to_dot();
        assert!(dot.starts_with("digraph flow {"));
    }
}
