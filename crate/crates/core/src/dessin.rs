//! Modular dessins: permutation pairs `(sigma0, sigma1)` with
//! `sigma0^3 = sigma1^2 = 1`, built from Farey symbols.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::farey::{side_slot, triangulate, FareyError, FareySymbol, Pairing};
use crate::permgroup::{orbits_of, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DessinError {
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error("invalid dessin: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dessin {
    sigma0: Permutation,
    sigma1: Permutation,
    symbol: Option<FareySymbol>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub genus: u64,
    pub cusps: usize,
    pub e2: usize,
    pub e3: usize,
    pub index: usize,
}

impl Dessin {
    /// Checks degrees, `sigma0^3 = sigma1^2 = 1` and transitivity.
    pub fn new(sigma0: Permutation, sigma1: Permutation) -> Result<Self, DessinError> {
        if sigma0.degree() != sigma1.degree() {
            return Err(DessinError::Invalid(format!(
                "sigma0 has degree {} but sigma1 has degree {}",
                sigma0.degree(),
                sigma1.degree()
            )));
        }
        if sigma0.degree() == 0 {
            return Err(DessinError::Invalid("degree must be positive".into()));
        }
        if !sigma0.pow(3).is_identity() {
            return Err(DessinError::Invalid(
                "sigma0 does not have order dividing 3".into(),
            ));
        }
        if !sigma1.pow(2).is_identity() {
            return Err(DessinError::Invalid(
                "sigma1 does not have order dividing 2".into(),
            ));
        }
        if orbits_of(sigma0.degree(), &[sigma0.clone(), sigma1.clone()]).len() != 1 {
            return Err(DessinError::Invalid(
                "<sigma0, sigma1> is not transitive".into(),
            ));
        }
        Ok(Self {
            sigma0,
            sigma1,
            symbol: None,
        })
    }

    pub fn degree(&self) -> usize {
        self.sigma0.degree()
    }

    pub fn sigma0(&self) -> &Permutation {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    /// The symbol this dessin was built from, if any.
    pub fn symbol(&self) -> Option<&FareySymbol> {
        self.symbol.as_ref()
    }

    pub fn surface_invariants(&self) -> SurfaceInvariants {
        surface_invariants(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree(),
            "sigma0": self.sigma0.to_one_based(),
            "sigma1": self.sigma1.to_one_based(),
        })
    }

    /// Bipartite graph: `w` nodes are the cycles of sigma0, `b` nodes the
    /// cycles of sigma1, and edge `i` joins the cycles containing `i`.
    pub fn to_dot(&self) -> String {
        let c0 = self.sigma0.cycles();
        let c1 = self.sigma1.cycles();
        let mut w_of = vec![0; self.degree()];
        let mut b_of = vec![0; self.degree()];
        for (k, c) in c0.iter().enumerate() {
            c.iter().for_each(|&i| w_of[i] = k);
        }
        for (k, c) in c1.iter().enumerate() {
            c.iter().for_each(|&i| b_of[i] = k);
        }
        let mut out = String::from("graph dessin {\n");
        for (k, c) in c0.iter().enumerate() {
            let _ = writeln!(
                out,
                "  w{k} [shape=circle, label=\"\", valency={}];",
                c.len()
            );
        }
        for (k, c) in c1.iter().enumerate() {
            let _ = writeln!(
                out,
                "  b{k} [shape=circle, style=filled, fillcolor=black, label=\"\", valency={}];",
                c.len()
            );
        }
        for i in 0..self.degree() {
            let _ = writeln!(out, "  w{} -- b{} [label=\"{}\"];", w_of[i], b_of[i], i + 1);
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

pub fn export_dessin(d: &Dessin, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => d.to_dot(),
        ExportFormat::Json => d.to_json().to_string(),
    }
}

/// Genus from `2 - 2g = c(sigma0) + c(sigma1) + c(sigma0 sigma1) - d`.
pub fn surface_invariants(d: &Dessin) -> SurfaceInvariants {
    let c0 = d.sigma0.cycle_count() as i64;
    let c1 = d.sigma1.cycle_count() as i64;
    let cusps = d.sigma0.compose(&d.sigma1).cycle_count();
    let euler = c0 + c1 + cusps as i64 - d.degree() as i64;
    assert!(
        euler <= 2 && euler % 2 == 0,
        "Euler characteristic {euler} of a connected dessin must be even and at most 2"
    );
    SurfaceInvariants {
        genus: ((2 - euler) / 2) as u64,
        cusps,
        e2: d.sigma1.fixed_points(),
        e3: d.sigma0.fixed_points(),
        index: d.degree(),
    }
}

/// One 3-cycle of sigma0 per triangle (edges `3t, 3t+1, 3t+2` on the sides
/// `(u,v), (v,w), (w,u)`), then one leaf edge per Odd side in symbol order.
/// sigma1 swaps the two edges across each diagonal, the two edges of a
/// Free pair, and an Odd side's centre edge with its leaf edge; it fixes
/// the centre edge of an Even side.
pub fn build_dessin(s: &FareySymbol) -> Result<Dessin, DessinError> {
    let tri = triangulate(s)?;
    let triangles = tri.triangles();
    let centre_edges = 3 * triangles.len();
    let degree = centre_edges + s.odd_sides();

    let mut images0: Vec<u32> = (0..degree as u32).collect();
    for t in 0..triangles.len() {
        let e = 3 * t as u32;
        images0[e as usize] = e + 1;
        images0[e as usize + 1] = e + 2;
        images0[e as usize + 2] = e;
    }

    let mut images1: Vec<u32> = (0..degree as u32).collect();
    let mut pair = |a: usize, b: usize| {
        images1[a] = b as u32;
        images1[b] = a as u32;
    };
    let centre_edge = |a, b| -> usize {
        let ts = tri.incident(a, b);
        let t = ts[0];
        3 * t + side_slot(&triangles[t], a, b).expect("incident triangle contains the side")
    };

    for (side, ts) in tri.diagonals() {
        let e: Vec<usize> = ts
            .iter()
            .map(|&t| 3 * t + side_slot(&triangles[t], side.0, side.1).unwrap())
            .collect();
        pair(e[0], e[1]);
    }
    let sides = s.sides();
    let pairings = s.pairings();
    for (i, &(a, b)) in sides.iter().enumerate() {
        if let Pairing::Free(k) = pairings[i] {
            if let Some(j) = (i + 1..sides.len()).find(|&j| pairings[j] == Pairing::Free(k)) {
                let (c, d) = sides[j];
                pair(centre_edge(a, b), centre_edge(c, d));
            }
        }
    }
    let mut leaf = centre_edges;
    for (i, &(a, b)) in sides.iter().enumerate() {
        if pairings[i] == Pairing::Odd {
            pair(centre_edge(a, b), leaf);
            leaf += 1;
        }
    }

    let sigma0 =
        Permutation::from_images(images0).map_err(|e| DessinError::Invalid(e.to_string()))?;
    let sigma1 =
        Permutation::from_images(images1).map_err(|e| DessinError::Invalid(e.to_string()))?;
    let mut d = Dessin::new(sigma0, sigma1)?;
    d.symbol = Some(s.clone());
    Ok(d)
}
