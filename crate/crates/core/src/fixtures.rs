//! Small named spaces used by tests, the acceptance suite, and the shipped
//! fixture corpus under `fixtures/`.
//!
//! Numbered fixtures use points `"1"..="v"` and name each line by the
//! concatenation of its points, e.g. `"124"`.

use crate::lattice::ChainLattice;
use crate::space::{FuzzyLinearSpace, PointId, PointSet};

fn numbered_points(v: usize) -> Vec<String> {
    (1..=v).map(|i| i.to_string()).collect()
}

fn numbered_lines(lines: &[&[usize]]) -> Vec<(String, PointSet)> {
    lines
        .iter()
        .map(|pts| {
            let name: String = pts.iter().map(|p| p.to_string()).collect();
            let set = pts.iter().map(|p| PointId(p - 1)).collect();
            (name, set)
        })
        .collect()
}

fn numbered(v: usize, lines: &[&[usize]]) -> FuzzyLinearSpace {
    FuzzyLinearSpace::from_supports(numbered_points(v), numbered_lines(lines))
        .expect("fixture is well-formed")
}

/// `N = {x, y, z}`, `d1 = (1,1,0)`, `d2 = (0,1,1)`, `d3 = (1,0,1)`.
pub fn example2() -> FuzzyLinearSpace {
    let names = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let lines = vec![
        ("d1".to_string(), PointSet::from_bits(0b011)),
        ("d2".to_string(), PointSet::from_bits(0b110)),
        ("d3".to_string(), PointSet::from_bits(0b101)),
    ];
    FuzzyLinearSpace::from_supports(names, lines).expect("fixture is well-formed")
}

/// [`example2`] over `L_1` with `d1 = (a1,1,0)`, `d2 = (0,a1,1)`, `d3 = (1,0,a1)`.
pub fn example2_l1() -> FuzzyLinearSpace {
    let l1 = ChainLattice::new(1).unwrap();
    // first supported point gets a1, second gets 1
    example2()
        .relabeled(l1, |j, p| match (j, p.0) {
            (0, 0) | (1, 1) | (2, 2) => 1,
            _ => 2,
        })
        .expect("fixture is well-formed")
}

pub fn triangle() -> FuzzyLinearSpace {
    numbered(3, &[&[1, 2], &[2, 3], &[1, 3]])
}

pub fn single_line(v: usize) -> FuzzyLinearSpace {
    let all: Vec<usize> = (1..=v).collect();
    numbered(v, &[&all])
}

/// One line through points `1..v-1`, and a two-point line from each of
/// them to point `v`.
pub fn near_pencil(v: usize) -> FuzzyLinearSpace {
    assert!(v >= 3);
    let long: Vec<usize> = (1..v).collect();
    let shorts: Vec<[usize; 2]> = (1..v).map(|i| [i, v]).collect();
    let mut lines: Vec<&[usize]> = vec![&long];
    lines.extend(shorts.iter().map(|p| p.as_slice()));
    numbered(v, &lines)
}

/// Every pair of points is a line.
pub fn all_pairs(v: usize) -> FuzzyLinearSpace {
    let pairs: Vec<[usize; 2]> = (1..=v)
        .flat_map(|i| (i + 1..=v).map(move |k| [i, k]))
        .collect();
    let lines: Vec<&[usize]> = pairs.iter().map(|p| p.as_slice()).collect();
    numbered(v, &lines)
}

/// The projective plane of order 2, lines `{i, i+1, i+3} mod 7`.
pub fn fano() -> FuzzyLinearSpace {
    numbered(
        7,
        &[
            &[1, 2, 4],
            &[2, 3, 5],
            &[3, 4, 6],
            &[4, 5, 7],
            &[1, 5, 6],
            &[2, 6, 7],
            &[1, 3, 7],
        ],
    )
}

/// The shipped corpus: file stem and space.
pub fn corpus() -> Vec<(String, FuzzyLinearSpace)> {
    let mut out = vec![
        ("example2".to_string(), example2()),
        ("example2-l1".to_string(), example2_l1()),
        ("triangle".to_string(), triangle()),
    ];
    for v in 4..=6 {
        out.push((format!("near-pencil-{v}"), near_pencil(v)));
    }
    for v in 4..=6 {
        out.push((format!("all-pairs-{v}"), all_pairs(v)));
    }
    out.push(("fano".to_string(), fano()));
    out
}
