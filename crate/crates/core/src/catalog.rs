//! Example catalog: groups, primes, Sylow choices and subsystems with
//! pre-registered verdicts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fusion::{FusionError, FusionSystem, MorphismRecord};
use crate::groups::{library, p_part, parse_cycles, Group, GroupError, GroupMono, GroupSpec, Subgroup};
use crate::mislin::Verdict;

/// The catalog shipped with the crate.
pub const BUILTIN: &str = include_str!("../data/catalog.json");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog does not parse: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error("entry {entry}: {reason}")]
    BadEntry { entry: String, reason: String },
}

/// A library name or an inline group spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Named(String),
    Spec(GroupSpec),
}

impl GroupRef {
    pub fn label(&self) -> &str {
        match self {
            GroupRef::Named(n) => n,
            GroupRef::Spec(s) => s.name(),
        }
    }

    pub fn build(&self) -> Result<Group, GroupError> {
        match self {
            GroupRef::Named(n) => library::by_name(n),
            GroupRef::Spec(s) => s.build(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsystemKind {
    /// `F_S(S)`.
    Sylow,
    /// `F_S(N_G(S))`.
    Normalizer,
    /// `F_S(G)` itself.
    Whole,
    /// `F_S(H)` for `H` generated by `S` and the listed permutations.
    Generated,
    /// Closure of explicit morphisms on the standalone Sylow subgroup.
    Manual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemSpec {
    pub name: String,
    pub kind: SubsystemKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismRecord>,
    #[serde(default)]
    pub expected: Option<Verdict>,
    /// How the expected verdict was obtained independently.
    #[serde(default)]
    pub oracle: String,
}

impl SubsystemSpec {
    /// Parses the command-line form: `sylow`, `normalizer`, `whole`, or
    /// permutations in cycle notation separated by `;`.
    pub fn from_arg(text: &str) -> Self {
        let kind = match text.trim() {
            "sylow" => SubsystemKind::Sylow,
            "normalizer" => SubsystemKind::Normalizer,
            "whole" | "full" => SubsystemKind::Whole,
            _ => SubsystemKind::Generated,
        };
        let generators = if kind == SubsystemKind::Generated {
            text.split(';').map(|g| g.trim().to_string()).filter(|g| !g.is_empty()).collect()
        } else {
            Vec::new()
        };
        SubsystemSpec {
            name: text.trim().to_string(),
            kind,
            generators,
            morphisms: Vec::new(),
            expected: None,
            oracle: String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub group: GroupRef,
    pub prime: u32,
    /// Generators of the Sylow subgroup; the canonical one when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sylow: Option<Vec<String>>,
    /// Run only when the cohomology computations fit the cochain cap.
    #[serde(default)]
    pub gated: bool,
    #[serde(default)]
    pub subsystems: Vec<SubsystemSpec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    #[serde(default)]
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("shipped catalog parses")
    }

    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A resolved entry: ambient group, Sylow subgroup, `F_S(G)` and the
/// subsystems, all on one base group.
#[derive(Clone, Debug)]
pub struct Instance {
    pub entry: CatalogEntry,
    pub group: Group,
    pub sylow: Subgroup,
    pub system: FusionSystem,
    pub subsystems: Vec<(SubsystemSpec, FusionSystem)>,
}

/// Element of a permutation group given in cycle notation.
pub fn element_of(g: &Group, text: &str) -> Result<usize, GroupError> {
    let rep = g.perm_rep().ok_or_else(|| GroupError::InvalidPermutation(format!("{text}: group has no permutation form")))?;
    let perm = parse_cycles(rep.points, text)?;
    rep.elements
        .iter()
        .position(|e| *e == perm)
        .ok_or_else(|| GroupError::InvalidPermutation(format!("{text} is not an element of the group")))
}

/// `F_S(H)` for the subgroup `H` described by `spec`.
pub fn subsystem(g: &Group, s: &Subgroup, p: u32, spec: &SubsystemSpec) -> Result<FusionSystem, CatalogError> {
    let h = match spec.kind {
        SubsystemKind::Sylow => s.clone(),
        SubsystemKind::Normalizer => g.normalizer(s),
        SubsystemKind::Whole => g.whole(),
        SubsystemKind::Generated => {
            let mut gens = spec.generators.iter().map(|t| element_of(g, t)).collect::<Result<Vec<_>, _>>()?;
            gens.extend_from_slice(s.elements());
            g.generate(&gens)
        }
        SubsystemKind::Manual => {
            let base = g.subgroup_group(s);
            let gens = spec
                .morphisms
                .iter()
                .map(|m| {
                    let src = base.subgroup(&m.source)?;
                    GroupMono::checked(&base, &base, src, m.images.clone())
                })
                .collect::<Result<Vec<_>, GroupError>>()?;
            return Ok(FusionSystem::from_generators(&base, p, &gens)?.with_name(&spec.name));
        }
    };
    Ok(FusionSystem::of_subgroup(g, &h, s, p)?.with_name(&spec.name))
}

impl CatalogEntry {
    pub fn resolve(&self) -> Result<Instance, CatalogError> {
        let bad = |reason: String| CatalogError::BadEntry { entry: self.name.clone(), reason };
        let g = self.group.build()?;
        let p = self.prime;
        let sylow = match &self.sylow {
            None => g.sylow_subgroup(p as usize),
            Some(gens) => {
                let gens = gens.iter().map(|t| element_of(&g, t)).collect::<Result<Vec<_>, _>>()?;
                g.generate(&gens)
            }
        };
        if sylow.order() != p_part(g.order(), p as usize) || !g.subgroup_group(&sylow).is_p_group(p as usize) {
            return Err(bad(format!("subgroup of order {} is not Sylow at {p}", sylow.order())));
        }
        let system = FusionSystem::of_group(&g, &sylow, p)?.with_name(&format!("F({})", self.group.label()));
        let subsystems = self
            .subsystems
            .iter()
            .map(|spec| Ok((spec.clone(), subsystem(&g, &sylow, p, spec)?)))
            .collect::<Result<Vec<_>, CatalogError>>()?;
        Ok(Instance { entry: self.clone(), group: g, sylow, system, subsystems })
    }
}
