use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactq::{collect_sparse, format_rational, parse_rational, Rational, RationalMatrix, SparseVec};

use super::{fmt_lincomb, QuadError, Word};

/// Quadratic algebra `T(V)/(R)` over ℚ. Column `a·g + b` of the relation
/// matrix is the degree-2 word `g_a g_b`; the matrix is kept in rref.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticAlgebra {
    generators: Vec<String>,
    relations: RationalMatrix,
}

impl QuadraticAlgebra {
    pub fn new(generators: Vec<String>, relations: &RationalMatrix) -> Result<Self, QuadError> {
        let g = generators.len();
        for (i, a) in generators.iter().enumerate() {
            if generators[..i].contains(a) {
                return Err(QuadError::DuplicateGenerator(a.clone()));
            }
        }
        if relations.ncols() != g * g {
            return Err(QuadError::RelationWidth {
                expected: g * g,
                found: relations.ncols(),
            });
        }
        let rows = relations.row_space_basis();
        Ok(Self {
            relations: RationalMatrix::from_sparse_rows(g * g, rows),
            generators,
        })
    }

    /// Relations given as lists of `((a, b), coeff)` terms.
    pub fn from_relations(
        generators: Vec<String>,
        relations: &[Vec<((usize, usize), Rational)>],
    ) -> Result<Self, QuadError> {
        let g = generators.len();
        let rows: Vec<SparseVec> = relations
            .iter()
            .map(|r| collect_sparse(r.iter().map(|((a, b), c)| (a * g + b, c.clone()))))
            .collect();
        if let Some(bad) = relations.iter().flatten().find(|((a, b), _)| *a >= g || *b >= g) {
            return Err(QuadError::UnknownGeneratorIndex(bad.0 .0.max(bad.0 .1)));
        }
        Self::new(generators, &RationalMatrix::from_sparse_rows(g * g, rows))
    }

    pub fn free(generators: Vec<String>) -> Self {
        let g = generators.len();
        Self::new(generators, &RationalMatrix::zeros(0, g * g)).expect("free algebra")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Relation matrix in rref.
    pub fn relations(&self) -> &RationalMatrix {
        &self.relations
    }

    pub fn relation_dim(&self) -> usize {
        self.relations.nrows()
    }

    pub fn word_of_col(&self, col: usize) -> Word {
        let g = self.num_generators();
        vec![col / g, col % g]
    }

    /// Relations as linear combinations of degree-2 words.
    pub fn relation_combos(&self) -> Vec<BTreeMap<Word, Rational>> {
        self.relations
            .rows()
            .iter()
            .map(|r| r.iter().map(|(c, x)| (self.word_of_col(*c), x.clone())).collect())
            .collect()
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        w.iter().map(|&i| self.generators[i].as_str()).collect::<Vec<_>>().join("·")
    }

    pub fn display_relations(&self) -> Vec<String> {
        self.relation_combos()
            .iter()
            .map(|lc| fmt_lincomb(lc, |w| self.format_word(w)))
            .collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            schema: Some(crate::SCHEMA.to_string()),
            generators: self.generators.clone(),
            relations: self
                .relation_combos()
                .iter()
                .map(|lc| {
                    lc.iter()
                        .map(|(w, c)| TermJson {
                            word: w.iter().map(|&i| self.generators[i].clone()).collect(),
                            coeff: format_rational(c),
                        })
                        .collect()
                })
                .collect(),
            order: None,
        }
    }
}

/// Name of the dual generator: `x` ↦ `x*`, `x*` ↦ `x`.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// Quadratic dual `A^! = T(V*)/(R^⊥)` for the pairing
/// `<g_a g_b, g_c* g_d*> = δ_ac δ_bd`.
pub fn quadratic_dual(a: &QuadraticAlgebra) -> QuadraticAlgebra {
    let g = a.num_generators();
    let perp = a.relations.kernel_basis();
    let names = a.generators.iter().map(|n| dual_name(n)).collect();
    QuadraticAlgebra::new(names, &RationalMatrix::from_sparse_rows(g * g, perp))
        .expect("dual of a valid presentation")
}

/// JSON presentation: generators by name, relations as lists of
/// `{word: [gen, gen], coeff: "p/q"}`, and an optional pinned generator
/// order (smallest first) that restricts certification to that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub generators: Vec<String>,
    pub relations: Vec<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub word: Vec<String>,
    pub coeff: String,
}

impl AlgebraJson {
    /// Validates names and coefficients; errors carry the offending field path.
    pub fn to_algebra(&self) -> Result<QuadraticAlgebra, QuadError> {
        if let Some(s) = &self.schema {
            if s != crate::SCHEMA {
                return Err(QuadError::Field {
                    path: "schema".into(),
                    msg: format!("expected {:?}, found {s:?}", crate::SCHEMA),
                });
            }
        }
        let gens = self.generators.clone();
        let lookup = |name: &str, path: String| {
            gens.iter().position(|g| g == name).ok_or(QuadError::Field {
                path,
                msg: format!("unknown generator {name:?}"),
            })
        };
        let mut rels = Vec::with_capacity(self.relations.len());
        for (i, rel) in self.relations.iter().enumerate() {
            let mut terms = Vec::with_capacity(rel.len());
            for (j, t) in rel.iter().enumerate() {
                let base = format!("relations[{i}][{j}]");
                if t.word.len() != 2 {
                    return Err(QuadError::Field {
                        path: format!("{base}.word"),
                        msg: format!("expected a word of length 2, found {}", t.word.len()),
                    });
                }
                let a = lookup(&t.word[0], format!("{base}.word[0]"))?;
                let b = lookup(&t.word[1], format!("{base}.word[1]"))?;
                let c = parse_rational(&t.coeff).map_err(|e| QuadError::Field {
                    path: format!("{base}.coeff"),
                    msg: e.to_string(),
                })?;
                terms.push(((a, b), c));
            }
            rels.push(terms);
        }
        QuadraticAlgebra::from_relations(gens, &rels)
    }

    /// Pinned order as generator indices (smallest first), if present.
    pub fn pinned_order(&self) -> Result<Option<Vec<usize>>, QuadError> {
        let Some(order) = &self.order else {
            return Ok(None);
        };
        let mut idx = Vec::with_capacity(order.len());
        for (k, name) in order.iter().enumerate() {
            let i = self.generators.iter().position(|g| g == name).ok_or(QuadError::Field {
                path: format!("order[{k}]"),
                msg: format!("unknown generator {name:?}"),
            })?;
            if idx.contains(&i) {
                return Err(QuadError::Field {
                    path: format!("order[{k}]"),
                    msg: format!("generator {name:?} listed twice"),
                });
            }
            idx.push(i);
        }
        if idx.len() != self.generators.len() {
            return Err(QuadError::Field {
                path: "order".into(),
                msg: "order must list every generator once".into(),
            });
        }
        Ok(Some(idx))
    }
}
