//! Named small groups used by the catalog and the CLI.

use super::{parse_cycles, Group, GroupError, GroupSpec, Perm, DEFAULT_CAP};

const PERMUTATION_GROUPS: &[(&str, usize, &[&str])] = &[
    ("C1", 1, &[]),
    ("C2", 2, &["(1 2)"]),
    ("C3", 3, &["(1 2 3)"]),
    ("C4", 4, &["(1 2 3 4)"]),
    ("V4", 4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
    ("S3", 3, &["(1 2 3)", "(1 2)"]),
    ("D8", 4, &["(1 2 3 4)", "(1 3)"]),
    ("Q8", 8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]),
    ("A4", 4, &["(1 2 3)", "(2 3 4)"]),
    ("S4", 4, &["(1 2 3 4)", "(1 2)"]),
];

pub fn names() -> Vec<&'static str> {
    let mut v: Vec<&str> = PERMUTATION_GROUPS.iter().map(|e| e.0).collect();
    v.push("SL23");
    v
}

/// Input spec of a named group.
pub fn spec(name: &str) -> Result<GroupSpec, GroupError> {
    let normalized = match name {
        "C2xC2" | "C2×C2" | "Klein" => "V4",
        "SL(2,3)" => "SL23",
        "1" | "trivial" => "C1",
        other => other,
    };
    if normalized == "SL23" {
        return Ok(sl23_spec());
    }
    let (n, points, gens) = PERMUTATION_GROUPS
        .iter()
        .find(|e| e.0 == normalized)
        .ok_or_else(|| GroupError::UnknownGroup(name.to_string()))?;
    let generators = gens
        .iter()
        .map(|g| parse_cycles(*points, g).map(|p| p.cycles()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupSpec::Permutations { name: n.to_string(), points: *points, generators })
}

pub fn by_name(name: &str) -> Result<Group, GroupError> {
    spec(name)?.build_with_cap(DEFAULT_CAP)
}

/// SL(2,3) acting on the eight nonzero vectors of F_3².
fn sl23_spec() -> GroupSpec {
    let vectors: Vec<(usize, usize)> =
        (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).filter(|&v| v != (0, 0)).collect();
    let act = |m: [[usize; 2]; 2]| {
        let images = vectors
            .iter()
            .map(|&(a, b)| {
                let v = ((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3);
                vectors.iter().position(|&w| w == v).unwrap()
            })
            .collect();
        Perm(images).cycles()
    };
    GroupSpec::Permutations {
        name: "SL23".to_string(),
        points: 8,
        generators: vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])],
    }
}
