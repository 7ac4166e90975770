use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactq::{collect_sparse, format_rational, parse_rational, Rational, RationalMatrix, SparseVec};
use crate::quadalg::dual_name;
use crate::walls::{brick_elems, brick_from_elems, enum_walls, fmt_brick, Brick};

use super::ProtoError;

/// Action of swapping the two inputs of a binary generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

impl Symmetry {
    pub fn swap_sign(self) -> i64 {
        match self {
            Symmetry::Symmetric => 1,
            Symmetry::Antisymmetric => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub symmetry: Symmetry,
}

/// Basis element of the weight-2 part of the free protoperad on `1..=arity`:
/// a two-brick connected wall (bricks stored ascending) with a generator on
/// each brick.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight2 {
    pub bottom: Brick,
    pub top: Brick,
    pub bottom_gen: usize,
    pub top_gen: usize,
}

/// Weight-2 relation in arity 2 or 3, as coordinates over [`weight2_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVector {
    pub arity: usize,
    pub terms: Vec<(Weight2, Rational)>,
}

/// A binary quadratic protoperad `P(V, R)`. The relation spaces are stored
/// in rref over [`weight2_basis`] and are closed under relabelling the inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuadraticProtoperad {
    generators: Vec<GeneratorSpec>,
    relations2: RationalMatrix,
    relations3: RationalMatrix,
}

/// Two-brick connected walls on `1..=arity` (arity 2 or 3) with all
/// generator labels, in a fixed order.
pub fn weight2_basis(num_gens: usize, arity: usize) -> Vec<Weight2> {
    let mut out = Vec::new();
    for w in enum_walls(arity, 2, &[2]) {
        for bottom_gen in 0..num_gens {
            for top_gen in 0..num_gens {
                out.push(Weight2 {
                    bottom: w.bricks()[0],
                    top: w.bricks()[1],
                    bottom_gen,
                    top_gen,
                });
            }
        }
    }
    out
}

fn permute_brick(b: Brick, perm: &[usize]) -> Brick {
    brick_elems(b).iter().fold(0, |m, &s| m | (1 << (perm[s - 1] - 1)))
}

/// Image of a basis element under relabelling `s ↦ perm[s-1]`, with the sign
/// picked up by generators whose inputs change order.
fn act(gens: &[GeneratorSpec], x: &Weight2, perm: &[usize]) -> (Weight2, i64) {
    let flips = |b: Brick| {
        let e = brick_elems(b);
        perm[e[0] - 1] > perm[e[1] - 1]
    };
    let mut sign = 1;
    if flips(x.bottom) {
        sign *= gens[x.bottom_gen].symmetry.swap_sign();
    }
    if flips(x.top) {
        sign *= gens[x.top_gen].symmetry.swap_sign();
    }
    let y = Weight2 {
        bottom: permute_brick(x.bottom, perm),
        top: permute_brick(x.top, perm),
        ..*x
    };
    (y, sign)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    heap(k, &mut cur, &mut out);
    out
}

/// Row space of `rows` closed under the symmetric group on the inputs.
fn symmetric_closure(gens: &[GeneratorSpec], arity: usize, rows: &[SparseVec]) -> RationalMatrix {
    let basis = weight2_basis(gens.len(), arity);
    let index: BTreeMap<Weight2, usize> = basis.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let mut all = Vec::new();
    for perm in permutations(arity) {
        for r in rows {
            all.push(collect_sparse(r.iter().map(|(c, q)| {
                let (y, s) = act(gens, &basis[*c], &perm);
                (index[&y], q * Rational::from_integer(s.into()))
            })));
        }
    }
    let m = RationalMatrix::from_sparse_rows(basis.len(), all);
    RationalMatrix::from_sparse_rows(basis.len(), m.row_space_basis())
}

impl BinaryQuadraticProtoperad {
    /// Relations are closed under relabelling before being stored.
    pub fn new(
        generators: Vec<GeneratorSpec>,
        relations2: &[RelationVector],
        relations3: &[RelationVector],
    ) -> Result<Self, ProtoError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(ProtoError::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut mats = Vec::new();
        for (arity, rels) in [(2, relations2), (3, relations3)] {
            let basis = weight2_basis(generators.len(), arity);
            let index: BTreeMap<Weight2, usize> = basis.iter().enumerate().map(|(i, x)| (*x, i)).collect();
            let mut rows = Vec::new();
            for r in rels {
                if r.arity != arity {
                    return Err(ProtoError::Invalid(format!(
                        "relation of arity {} listed with arity {arity}",
                        r.arity
                    )));
                }
                let mut row = Vec::new();
                for (x, q) in &r.terms {
                    let c = index.get(x).ok_or_else(|| {
                        ProtoError::Invalid(format!("term {} is not a weight-2 basis element", fmt_weight2(&generators, x)))
                    })?;
                    row.push((*c, q.clone()));
                }
                rows.push(collect_sparse(row));
            }
            mats.push(symmetric_closure(&generators, arity, &rows));
        }
        let relations3 = mats.pop().expect("two arities");
        let relations2 = mats.pop().expect("two arities");
        Ok(Self {
            generators,
            relations2,
            relations3,
        })
    }

    pub fn from_matrices(
        generators: Vec<GeneratorSpec>,
        relations2: RationalMatrix,
        relations3: RationalMatrix,
    ) -> Result<Self, ProtoError> {
        let to_vecs = |arity: usize, m: &RationalMatrix| {
            let basis = weight2_basis(generators.len(), arity);
            m.rows()
                .iter()
                .map(|r| RelationVector {
                    arity,
                    terms: r.iter().map(|(c, q)| (basis[*c], q.clone())).collect(),
                })
                .collect::<Vec<_>>()
        };
        let r2 = to_vecs(2, &relations2);
        let r3 = to_vecs(3, &relations3);
        Self::new(generators, &r2, &r3)
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Relation space in arity 2 or 3, rref over [`weight2_basis`].
    pub fn relations(&self, arity: usize) -> &RationalMatrix {
        match arity {
            2 => &self.relations2,
            3 => &self.relations3,
            _ => panic!("binary quadratic relations live in arity 2 and 3"),
        }
    }

    pub fn relation_vectors(&self, arity: usize) -> Vec<RelationVector> {
        let basis = weight2_basis(self.num_generators(), arity);
        self.relations(arity)
            .rows()
            .iter()
            .map(|r| RelationVector {
                arity,
                terms: r.iter().map(|(c, q)| (basis[*c], q.clone())).collect(),
            })
            .collect()
    }

    pub fn display_relations(&self, arity: usize) -> Vec<String> {
        self.relation_vectors(arity)
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .enumerate()
                    .map(|(i, (x, q))| {
                        crate::exactq::rational::signed_term(i == 0, q, &fmt_weight2(&self.generators, x))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> ProtoperadJson {
        let rel = |arity| {
            self.relation_vectors(arity)
                .iter()
                .map(|r| RelationJson {
                    terms: r
                        .terms
                        .iter()
                        .map(|(x, q)| TermJson {
                            bottom_brick: brick_elems(x.bottom),
                            top_brick: brick_elems(x.top),
                            bottom_gen: self.generators[x.bottom_gen].name.clone(),
                            top_gen: self.generators[x.top_gen].name.clone(),
                            coeff: format_rational(q),
                        })
                        .collect(),
                })
                .collect()
        };
        ProtoperadJson {
            schema: Some(crate::SCHEMA.to_string()),
            generators: self.generators.clone(),
            relations2: rel(2),
            relations3: rel(3),
        }
    }
}

/// `x_{12}·x_{23}`-style rendering (bottom first).
pub fn fmt_weight2(gens: &[GeneratorSpec], x: &Weight2) -> String {
    format!(
        "{}{}·{}{}",
        gens[x.bottom_gen].name,
        fmt_brick(x.bottom),
        gens[x.top_gen].name,
        fmt_brick(x.top)
    )
}

/// Quadratic dual presentation: dual generators (same symmetry, the pairing
/// being invariant under relabelling) and orthogonal relation spaces.
pub fn dual_presentation(p: &BinaryQuadraticProtoperad) -> BinaryQuadraticProtoperad {
    let gens: Vec<GeneratorSpec> = p
        .generators
        .iter()
        .map(|g| GeneratorSpec {
            name: dual_name(&g.name),
            symmetry: g.symmetry,
        })
        .collect();
    let perp = |m: &RationalMatrix| RationalMatrix::from_sparse_rows(m.ncols(), m.kernel_basis());
    BinaryQuadraticProtoperad::from_matrices(gens, perp(&p.relations2), perp(&p.relations3))
        .expect("dual of a valid presentation")
}

/// Dimension of the weight-`rho` part of the free protoperad on `1..=n`:
/// connected walls with `rho` two-element bricks, times generator choices.
pub fn free_dim(gens: &[GeneratorSpec], n: usize, rho: usize) -> u64 {
    let walls = enum_walls(n, rho, &[2]).len() as u64;
    walls * (gens.len() as u64).pow(rho as u32)
}

/// `n! · dims(n)`: dimension of the induced bimodule in arity `(n, n)`.
pub fn ind_dim(dims: impl Fn(usize) -> u64, n: usize) -> u64 {
    (1..=n as u64).product::<u64>() * dims(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtoperadJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations2: Vec<RelationJson>,
    #[serde(default)]
    pub relations3: Vec<RelationJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub bottom_brick: Vec<usize>,
    pub top_brick: Vec<usize>,
    pub bottom_gen: String,
    pub top_gen: String,
    pub coeff: String,
}

impl ProtoperadJson {
    /// Validates and normalizes: brick inputs are sorted ascending, and an
    /// antisymmetric generator read with descending inputs contributes `-1`.
    pub fn to_protoperad(&self) -> Result<BinaryQuadraticProtoperad, ProtoError> {
        let field = |path: String, msg: String| ProtoError::Field { path, msg };
        if let Some(s) = &self.schema {
            if s != crate::SCHEMA {
                return Err(field("schema".into(), format!("expected {:?}, found {s:?}", crate::SCHEMA)));
            }
        }
        let gens = &self.generators;
        let mut rels = [Vec::new(), Vec::new()];
        for (slot, (arity, key, list)) in [(2, "relations2", &self.relations2), (3, "relations3", &self.relations3)]
            .into_iter()
            .enumerate()
        {
            for (i, r) in list.iter().enumerate() {
                let mut terms = Vec::new();
                for (j, t) in r.terms.iter().enumerate() {
                    let base = format!("{key}[{i}].terms[{j}]");
                    let gen = |name: &str, f: &str| {
                        gens.iter().position(|g| g.name == name).ok_or_else(|| {
                            field(format!("{base}.{f}"), format!("unknown generator {name:?}"))
                        })
                    };
                    let bottom_gen = gen(&t.bottom_gen, "bottom_gen")?;
                    let top_gen = gen(&t.top_gen, "top_gen")?;
                    let brick = |elems: &[usize], f: &str| -> Result<(Brick, i64), ProtoError> {
                        let ok = elems.len() == 2
                            && elems[0] != elems[1]
                            && elems.iter().all(|&s| (1..=arity).contains(&s));
                        if !ok {
                            return Err(field(
                                format!("{base}.{f}"),
                                format!("expected two distinct inputs in 1..={arity}, found {elems:?}"),
                            ));
                        }
                        Ok((brick_from_elems(elems), if elems[0] > elems[1] { -1 } else { 1 }))
                    };
                    let (bottom, flip_b) = brick(&t.bottom_brick, "bottom_brick")?;
                    let (top, flip_t) = brick(&t.top_brick, "top_brick")?;
                    if arity == 3 && bottom == top {
                        return Err(field(
                            base.clone(),
                            "an arity-3 term needs two different bricks".into(),
                        ));
                    }
                    let mut coeff = parse_rational(&t.coeff)
                        .map_err(|e| field(format!("{base}.coeff"), e.to_string()))?;
                    let sign = |flip: i64, g: usize| if flip < 0 { gens[g].symmetry.swap_sign() } else { 1 };
                    if sign(flip_b, bottom_gen) * sign(flip_t, top_gen) < 0 {
                        coeff = -coeff;
                    }
                    terms.push((
                        Weight2 {
                            bottom,
                            top,
                            bottom_gen,
                            top_gen,
                        },
                        coeff,
                    ));
                }
                rels[slot].push(RelationVector { arity, terms });
            }
        }
        BinaryQuadraticProtoperad::new(gens.clone(), &rels[0], &rels[1])
    }
}
