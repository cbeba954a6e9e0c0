//! End-to-end modular content of a Farey symbol: dessin, monodromy group,
//! decomposition of the permutation representation, dimension vectors and
//! the local quiver.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::dessin::{build_dessin, DessinError, SurfaceInvariants};
use crate::farey::{triangulate, FareyError, FareySymbol};
use crate::permgroup::{
    group_from_dessin, AltSym, GroupError, DEFAULT_CLASS_ENUM_BOUND, DEFAULT_SEED,
};
use crate::quiver::{
    dimvec_from_character, modular_content, part_dimension_vectors, DimensionVector5, QuiverError,
    QuiverPresentation,
};
use crate::reptheory::{decompose_permutation, Decomposition, ReptheoryError};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContentError {
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Dessin(#[from] DessinError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Reptheory(#[from] ReptheoryError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl ContentError {
    pub fn is_size_bound(&self) -> bool {
        match self {
            ContentError::Group(GroupError::SizeBoundExceeded { .. }) => true,
            ContentError::Reptheory(e) => e.is_size_bound(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ContentOptions {
    pub seed: u64,
    pub class_bound: u64,
}

impl Default for ContentOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            class_bound: DEFAULT_CLASS_ENUM_BOUND,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    /// Decimal string, since orders exceed 64 bits.
    pub order: String,
    pub transitive: bool,
    pub two_transitive: bool,
    pub classification: AltSym,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelledDimensionVector {
    pub label: String,
    pub multiplicity: u64,
    pub alpha: DimensionVector5,
}

/// How the loops of the local quiver read when the quiver is symmetric and
/// opposite arrows are drawn as one double-headed glyph.
#[derive(Debug, Clone, Serialize)]
pub struct ContentLoops {
    pub symmetric: bool,
    pub loops: Vec<u64>,
    pub loop_pairs: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContentReport {
    pub version: String,
    pub seed: u64,
    pub symbol: String,
    pub degree: usize,
    pub triangles: usize,
    pub sigma0_cycle_type: Vec<usize>,
    pub sigma1_cycle_type: Vec<usize>,
    pub surface: SurfaceInvariants,
    pub group: GroupSummary,
    pub decomposition: Decomposition,
    pub permutation_dimension_vector: DimensionVector5,
    pub dimension_vectors: Vec<LabelledDimensionVector>,
    pub content: QuiverPresentation,
    pub loops: ContentLoops,
}

pub fn content_report(
    symbol: &FareySymbol,
    options: ContentOptions,
) -> Result<ContentReport, ContentError> {
    let dessin = build_dessin(symbol)?;
    let group = group_from_dessin(&dessin).with_seed(options.seed);
    let transitive = group.is_transitive();
    if !transitive {
        return Err(ContentError::Inconsistent(
            "monodromy group is not transitive".into(),
        ));
    }
    let two_transitive = dessin.degree() > 1 && group.is_2transitive()?;
    let decomposition = decompose_permutation(&group, &dessin, options.class_bound)?;
    let d = dessin.degree() as u64;
    if decomposition.total_degree() != d {
        return Err(ContentError::Inconsistent(format!(
            "constituent degrees sum to {} instead of {d}",
            decomposition.total_degree()
        )));
    }

    let s0 = dessin.sigma0();
    let fix = |p: &crate::permgroup::Permutation| {
        crate::habiro::CyclotomicInteger::from_int(1, p.fixed_points() as i64)
    };
    let alpha_m = dimvec_from_character(
        d,
        &(dessin.sigma1().fixed_points() as i64).into(),
        &fix(s0),
        &fix(&s0.pow(2)),
    )?;
    let dims = part_dimension_vectors(&decomposition)?;
    let summed = decomposition
        .parts
        .iter()
        .zip(&dims)
        .fold(DimensionVector5::default(), |acc, (p, a)| {
            acc.plus(&a.scaled(p.multiplicity))
        });
    if summed != alpha_m {
        return Err(ContentError::Inconsistent(format!(
            "constituent dimension vectors sum to {summed}, expected {alpha_m}"
        )));
    }
    let content = modular_content(&decomposition)?;
    let k = content.vertices.len();
    let loops = ContentLoops {
        symmetric: content.is_symmetric(),
        loops: (0..k).map(|i| content.loops(i)).collect(),
        loop_pairs: (0..k).map(|i| content.loop_pairs(i)).collect(),
    };
    let triangles = triangulate(symbol)?.triangles().len();
    Ok(ContentReport {
        version: VERSION.into(),
        seed: options.seed,
        symbol: symbol.to_string(),
        degree: dessin.degree(),
        triangles,
        sigma0_cycle_type: s0.cycle_type(),
        sigma1_cycle_type: dessin.sigma1().cycle_type(),
        surface: dessin.surface_invariants(),
        group: GroupSummary {
            order: group.order().to_string(),
            transitive,
            two_transitive,
            classification: group.alt_sym(),
        },
        dimension_vectors: decomposition
            .parts
            .iter()
            .zip(&content.vertices)
            .zip(dims)
            .map(|((p, label), alpha)| LabelledDimensionVector {
                label: label.clone(),
                multiplicity: p.multiplicity,
                alpha,
            })
            .collect(),
        decomposition,
        permutation_dimension_vector: alpha_m,
        content,
        loops,
    })
}

impl fmt::Display for ContentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "symbol        {}", self.symbol)?;
        writeln!(f, "degree        {}", self.degree)?;
        writeln!(f, "sigma0 type   {:?}", self.sigma0_cycle_type)?;
        writeln!(f, "sigma1 type   {:?}", self.sigma1_cycle_type)?;
        writeln!(
            f,
            "surface       genus {}, cusps {}, e2 {}, e3 {}",
            self.surface.genus, self.surface.cusps, self.surface.e2, self.surface.e3
        )?;
        writeln!(
            f,
            "group         order {}, {:?}, transitive {}, 2-transitive {}",
            self.group.order,
            self.group.classification,
            self.group.transitive,
            self.group.two_transitive
        )?;
        writeln!(f, "alpha_M       {}", self.permutation_dimension_vector)?;
        for (v, part) in self.dimension_vectors.iter().zip(&self.decomposition.parts) {
            writeln!(
                f,
                "part {:<8} multiplicity {}, degree {}, chi(s0) = {}, chi(s1) = {}, alpha = {}",
                v.label, v.multiplicity, part.degree, part.at_sigma0, part.at_sigma1, v.alpha
            )?;
        }
        writeln!(f, "arrows")?;
        for (label, row) in self.content.vertices.iter().zip(&self.content.arrows) {
            let cells: Vec<String> = row.iter().map(|n| format!("{n:>4}")).collect();
            writeln!(f, "  {label:<8}{}", cells.join(""))?;
        }
        if self.loops.symmetric {
            writeln!(f, "loop pairs    {:?}", self.loops.loop_pairs)?;
        }
        Ok(())
    }
}
