//! Instance and broadcast documents.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use caterpillar_broadcast::{Broadcast, Caterpillar, Tree, VertexRole};
use serde::{Deserialize, Serialize};

/// `{"lambdas": [...]}` or `{"tree": {"n": .., "edges": [[u, v], ...]}}`.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeDocument>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDocument {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

/// A loaded instance. A single λ value `n` stands for the star `K_{1,n}`.
#[derive(Debug, Clone)]
pub enum LoadedInstance {
    Caterpillar(Caterpillar),
    Star(u32),
    Tree(Tree),
}

impl LoadedInstance {
    pub fn from_lambdas(lambdas: Vec<u32>) -> anyhow::Result<LoadedInstance> {
        match lambdas.as_slice() {
            [] => bail!("empty λ sequence"),
            [n] => Ok(LoadedInstance::Star(*n)),
            _ => Ok(LoadedInstance::Caterpillar(Caterpillar::new(lambdas)?)),
        }
    }

    pub fn parse_lambdas(text: &str) -> anyhow::Result<LoadedInstance> {
        let lambdas = text
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .with_context(|| format!("{:?} is not a non-negative integer", p.trim()))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        Self::from_lambdas(lambdas)
    }

    pub fn from_document(doc: InstanceDocument) -> anyhow::Result<LoadedInstance> {
        match (doc.lambdas, doc.tree) {
            (Some(l), None) => Self::from_lambdas(l),
            (None, Some(t)) => Ok(LoadedInstance::Tree(Tree::new(t.n, &t.edges)?)),
            _ => bail!("instance document needs exactly one of \"lambdas\" and \"tree\""),
        }
    }

    pub fn load(path: &Path) -> anyhow::Result<LoadedInstance> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let doc: InstanceDocument =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Self::from_document(doc)
    }

    pub fn tree(&self) -> Tree {
        match self {
            LoadedInstance::Caterpillar(ct) => ct.to_tree(),
            LoadedInstance::Star(n) => Tree::star(*n as usize),
            LoadedInstance::Tree(t) => t.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            LoadedInstance::Caterpillar(ct) => ct.to_string(),
            LoadedInstance::Star(n) => format!("K_1,{n}"),
            LoadedInstance::Tree(t) => format!("tree on {} vertices", t.vertex_count()),
        }
    }

    /// Vertex name used in broadcast files and DOT output.
    pub fn vertex_name(&self, v: usize) -> String {
        match self {
            LoadedInstance::Caterpillar(ct) => ct.role(v).to_string(),
            LoadedInstance::Star(_) if v == 0 => "v0".to_string(),
            LoadedInstance::Star(_) => format!("l0_{v}"),
            LoadedInstance::Tree(_) => v.to_string(),
        }
    }

    pub fn vertex_by_name(&self, name: &str) -> anyhow::Result<usize> {
        let n = self.tree().vertex_count();
        let v = match self {
            LoadedInstance::Caterpillar(ct) => {
                let role: VertexRole = name.parse().map_err(anyhow::Error::msg)?;
                ct.vertex_of(role)
            }
            LoadedInstance::Star(_) => {
                match name.parse::<VertexRole>().map_err(anyhow::Error::msg)? {
                    VertexRole::Spine(0) => Some(0),
                    VertexRole::Leaf(0, j) if j < n => Some(j),
                    _ => None,
                }
            }
            LoadedInstance::Tree(_) => name.parse::<usize>().ok().filter(|&v| v < n),
        };
        v.with_context(|| format!("no vertex named {name:?} in {}", self.label()))
    }

    /// `{"values": {name: value}, "cost": c}` with every vertex listed.
    pub fn broadcast_json(&self, b: &Broadcast) -> serde_json::Value {
        let values: serde_json::Map<String, serde_json::Value> = (0..b.len())
            .map(|v| (self.vertex_name(v), b.get(v).into()))
            .collect();
        serde_json::json!({ "values": values, "cost": b.cost() })
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct BroadcastDocument {
    pub values: BTreeMap<String, u32>,
    #[serde(default)]
    pub cost: Option<u64>,
}

/// Reads a broadcast file against an instance. Unlisted vertices get 0.
pub fn load_broadcast(
    path: &Path,
    inst: &LoadedInstance,
) -> anyhow::Result<(Broadcast, Option<u64>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: BroadcastDocument =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut b = Broadcast::zeros(inst.tree().vertex_count());
    for (name, &value) in &doc.values {
        b.set(inst.vertex_by_name(name)?, value);
    }
    Ok((b, doc.cost))
}
