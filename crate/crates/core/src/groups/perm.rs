//! Permutations and the group input format.

use serde::{Deserialize, Serialize};

use super::{Group, GroupError, DEFAULT_CAP};

/// A permutation of `0..n` stored by images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn validate(&self, points: usize) -> Result<(), GroupError> {
        if self.0.len() != points {
            return Err(GroupError::InvalidPermutation(format!("expected {points} points, got {}", self.0.len())));
        }
        let mut seen = vec![false; points];
        for &i in &self.0 {
            if i >= points || std::mem::replace(&mut seen[i], true) {
                return Err(GroupError::InvalidPermutation(format!("{:?} is not a bijection", self.0)));
            }
        }
        Ok(())
    }

    /// From 1-based cycles.
    pub fn from_cycles(points: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut img: Vec<usize> = (0..points).collect();
        let mut touched = vec![false; points];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a == 0 || a > points {
                    return Err(GroupError::InvalidPermutation(format!("point {a} outside 1..={points}")));
                }
                if std::mem::replace(&mut touched[a - 1], true) {
                    return Err(GroupError::InvalidPermutation(format!("point {a} repeated")));
                }
                let b = cyc[(k + 1) % cyc.len()];
                if b == 0 || b > points {
                    return Err(GroupError::InvalidPermutation(format!("point {b} outside 1..={points}")));
                }
                img[a - 1] = b - 1;
            }
        }
        Ok(Perm(img))
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i + 1);
                i = self.0[i];
            }
            out.push(cyc);
        }
        out
    }
}

pub fn format_cycles(p: &Perm) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
        .collect()
}

/// Parses cycle notation such as `(1 2 3)(4 5)`; commas are accepted as separators.
pub fn parse_cycles(points: usize, text: &str) -> Result<Perm, GroupError> {
    let bad = || GroupError::InvalidPermutation(text.to_string());
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let cyc = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        if !cyc.is_empty() {
            cycles.push(cyc);
        }
        rest = body[close + 1..].trim_start();
    }
    Perm::from_cycles(points, &cycles)
}

/// Group input file contents.
///
/// Either `{"name", "points", "generators"}` with each generator a list of
/// 1-based cycles, or `{"name", "table"}` with a full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Permutations { name: String, points: usize, generators: Vec<Vec<Vec<usize>>> },
    Table { name: String, table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn name(&self) -> &str {
        match self {
            GroupSpec::Permutations { name, .. } | GroupSpec::Table { name, .. } => name,
        }
    }

    pub fn build(&self) -> Result<Group, GroupError> {
        self.build_with_cap(DEFAULT_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<Group, GroupError> {
        match self {
            GroupSpec::Permutations { points, generators, .. } => {
                let gens = generators
                    .iter()
                    .map(|c| Perm::from_cycles(*points, c))
                    .collect::<Result<Vec<_>, _>>()?;
                Group::from_permutations(*points, &gens, cap)
            }
            GroupSpec::Table { table, .. } => {
                if table.len() > cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                Group::from_table(table)
            }
        }
    }

    /// Spec describing `g` with the same element indexing: its permutation
    /// generators when they reproduce it, else its table.
    pub fn of_group(name: &str, g: &Group) -> Self {
        if let Some(rep) = g.perm_rep() {
            let spec = GroupSpec::Permutations {
                name: name.to_string(),
                points: rep.points,
                generators: rep.generators.iter().map(Perm::cycles).collect(),
            };
            if spec.build_with_cap(g.order().max(1)).as_ref() == Ok(g) {
                return spec;
            }
        }
        GroupSpec::Table { name: name.to_string(), table: g.table() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = parse_cycles(5, "(1 3 2)(4,5)").unwrap();
        assert_eq!(p.0, vec![2, 0, 1, 4, 3]);
        assert_eq!(format_cycles(&p), "(1 3 2)(4 5)");
        assert_eq!(format_cycles(&Perm::identity(3)), "()");
        assert!(parse_cycles(3, "(1 4)").is_err());
        assert!(parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(parse_cycles(3, "1 2").is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = parse_cycles(3, "(1 2)").unwrap();
        let b = parse_cycles(3, "(2 3)").unwrap();
        // a∘b sends 2 -> 3 -> 3 and 3 -> 2 -> 1.
        assert_eq!(format_cycles(&a.compose(&b)), "(1 2 3)");
    }

    #[test]
    fn spec_json_round_trip() {
        let text = r#"{"name":"S3","points":3,"generators":[[[1,2,3]],[[1,2]]]}"#;
        let spec: GroupSpec = serde_json::from_str(text).unwrap();
        let g = spec.build().unwrap();
        assert_eq!(g.order(), 6);
        let again = GroupSpec::of_group("S3", &g);
        assert_eq!(again, spec);
        assert_eq!(serde_json::to_string(&again).unwrap(), text);

        let table = GroupSpec::Table { name: "C3".into(), table: Group::cyclic(3).table() };
        let json = serde_json::to_string(&table).unwrap();
        let back: GroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), Group::cyclic(3));
        assert_eq!(GroupSpec::of_group("C3", &back.build().unwrap()), table);
    }
}
