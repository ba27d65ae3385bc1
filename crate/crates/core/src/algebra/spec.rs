//! JSON algebra specifications.
//!
//! Two shapes are accepted. The elementary form lists blocks and radical
//! generators (locations are one based, `p + 1` meaning the adjoint
//! idempotent). The table form lists a basis and nonzero basis products and
//! is what derived algebras (quotients, envelopes) serialize to.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::build::{assemble_elementary, RadicalGenerator, RadicalSpec};
use super::{BasisRole, Block, Decomposition, SuperAlgebra};
use crate::caps::Caps;
use crate::error::{invalid, Error, Result};
use crate::linalg::SparseVec;
use crate::scalar::{Parity, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BlockSpec {
    Matrix { k: usize, m: usize },
    Group { k: usize },
}

impl From<BlockSpec> for Block {
    fn from(b: BlockSpec) -> Block {
        match b {
            BlockSpec::Matrix { k, m } => Block::Matrix { k, m },
            BlockSpec::Group { k } => Block::Group { k },
        }
    }
}

impl From<Block> for BlockSpec {
    fn from(b: Block) -> BlockSpec {
        match b {
            Block::Matrix { k, m } => BlockSpec::Matrix { k, m },
            Block::Group { k } => BlockSpec::Group { k },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadicalEntry {
    pub label: String,
    pub parity: Parity,
    pub from: usize,
    pub to: usize,
}

/// `[a, b, [[coef, label], ...]]`.
pub type ProductEntry = (String, String, Vec<(Scalar, String)>);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadicalSpecJson {
    #[serde(default)]
    pub generators: Vec<RadicalEntry>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementarySpec {
    pub blocks: Vec<BlockSpec>,
    #[serde(default)]
    pub radical: RadicalSpecJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDecomposition {
    pub blocks: Vec<BlockSpec>,
    /// Matrix-unit labels of each block: row-major plain units, then row-major `·c` units.
    pub units: Vec<Vec<String>>,
    pub radical: Vec<TableRadical>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRadical {
    pub label: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub basis: Vec<BasisEntry>,
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<TableDecomposition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Elementary(ElementarySpec),
    Table(TableSpec),
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<AlgebraSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra specs serialize")
    }

    pub fn build(&self, caps: &Caps) -> Result<SuperAlgebra> {
        match self {
            AlgebraSpec::Elementary(e) => e.build(caps),
            AlgebraSpec::Table(t) => t.build(caps),
        }
    }
}

impl ElementarySpec {
    pub fn build(&self, caps: &Caps) -> Result<SuperAlgebra> {
        let blocks: Vec<Block> = self.blocks.iter().cloned().map(Block::from).collect();
        let p = blocks.len();
        let mut generators = Vec::new();
        for g in &self.radical.generators {
            if g.from == 0 || g.to == 0 || g.from > p + 1 || g.to > p + 1 {
                return invalid(format!("generator {} must have locations in 1..={}", g.label, p + 1));
            }
            generators.push(RadicalGenerator { label: g.label.clone(), parity: g.parity, from: g.from - 1, to: g.to - 1 });
        }
        let spec = RadicalSpec { generators, products: self.radical.products.clone() };
        assemble_elementary(&blocks, &spec, caps)
    }
}

impl TableSpec {
    pub fn build(&self, caps: &Caps) -> Result<SuperAlgebra> {
        let index: HashMap<&str, usize> = self.basis.iter().enumerate().map(|(i, b)| (b.label.as_str(), i)).collect();
        let look = |l: &str| -> Result<usize> {
            index.get(l).copied().ok_or_else(|| Error::Validation(format!("unknown basis label {l}")))
        };
        let dim = self.basis.len();
        if dim > caps.max_dim {
            return Err(Error::Resource(format!("dimension {dim} exceeds the cap {}", caps.max_dim)));
        }
        let mut table: Vec<SparseVec> = vec![Vec::new(); dim * dim];
        let mut seen = std::collections::HashSet::new();
        for (a, b, terms) in &self.products {
            let (i, j) = (look(a)?, look(b)?);
            if !seen.insert((i, j)) {
                return invalid(format!("product ({a}, {b}) is given twice"));
            }
            let mut v = Vec::new();
            for (c, t) in terms {
                v.push((look(t)?, c.clone()));
            }
            table[i * dim + j] = super::Element::from_terms(v).0;
        }
        let unit = self.unit.as_deref().map(look).transpose()?;
        let decomposition = match &self.decomposition {
            None => None,
            Some(d) => {
                let blocks: Vec<Block> = d.blocks.iter().cloned().map(Block::from).collect();
                let p = blocks.len();
                let mut roles = vec![None; dim];
                let mut units = Vec::new();
                for (l, us) in d.units.iter().enumerate() {
                    let mut u = Vec::new();
                    for lab in us {
                        let i = look(lab)?;
                        roles[i] = Some(BasisRole::Semisimple { block: l });
                        u.push(i);
                    }
                    units.push(u);
                }
                for r in &d.radical {
                    if r.from == 0 || r.to == 0 || r.from > p + 1 || r.to > p + 1 {
                        return invalid(format!("radical element {} has a location outside 1..={}", r.label, p + 1));
                    }
                    roles[look(&r.label)?] = Some(BasisRole::Radical { left: r.from - 1, right: r.to - 1 });
                }
                let roles: Option<Vec<BasisRole>> = roles.into_iter().collect();
                let Some(roles) = roles else {
                    return invalid("the decomposition does not assign every basis element");
                };
                Some(Decomposition { blocks, units, roles })
            }
        };
        SuperAlgebra::from_table(
            self.basis.iter().map(|b| b.label.clone()).collect(),
            self.basis.iter().map(|b| b.parity).collect(),
            table,
            unit,
            decomposition,
            caps,
        )
    }
}

impl SuperAlgebra {
    /// The table form of this algebra, listing nonzero products in basis order.
    pub fn to_table_spec(&self) -> TableSpec {
        let dim = self.dim();
        let basis = (0..dim).map(|i| BasisEntry { label: self.label(i).to_string(), parity: self.degree(i) }).collect();
        let mut products = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let p = self.basis_product(i, j);
                if !p.is_empty() {
                    products.push((
                        self.label(i).to_string(),
                        self.label(j).to_string(),
                        p.iter().map(|(k, c)| (c.clone(), self.label(*k).to_string())).collect(),
                    ));
                }
            }
        }
        let decomposition = self.decomposition().map(|d| TableDecomposition {
            blocks: d.blocks.iter().copied().map(BlockSpec::from).collect(),
            units: d.units.iter().map(|u| u.iter().map(|&i| self.label(i).to_string()).collect()).collect(),
            radical: d
                .radical_indices()
                .into_iter()
                .map(|i| match d.roles[i] {
                    BasisRole::Radical { left, right } => {
                        TableRadical { label: self.label(i).to_string(), from: left + 1, to: right + 1 }
                    }
                    BasisRole::Semisimple { .. } => unreachable!(),
                })
                .collect(),
        });
        TableSpec { basis, products, unit: self.unit_index().map(|u| self.label(u).to_string()), decomposition }
    }
}
