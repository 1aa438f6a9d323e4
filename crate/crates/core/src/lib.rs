//! Arcs on punctured spheres.
//!
//! The sphere with `m + 1` punctures is modelled as the rectangle
//! `[0, m+1] x [0, 1]` whose boundary is the distinguished puncture `p`,
//! with interior punctures `q_1..q_m` on the midline. Arcs are named by the
//! signed sequence of vertical walls they cross (see [`code`]), drawn by a
//! combinatorial chord model of the cut-open disc (see [`chord`]) and turned
//! into exact rational polylines on demand.

pub mod chord;
pub mod code;
pub mod disc;
pub mod error;
pub mod extremal;
pub mod fish;
pub mod geom;
pub mod io;
pub mod position;

pub use code::{enumerate_codes, is_simple_and_essential, reduce_code, Anchor, ArcCode, EndpointFilter};
pub use disc::{make_disc_model, punctures_in_region, transverse_intersections, DiscModel, PLArc};
pub use error::{Error, Result};
pub use extremal::{
    build_graph, max_clique, search, thm1_construction, thm2_construction, CliqueResult, CompatibilityGraph,
    DoubledPolygonFamily, SearchResult, Variant,
};
pub use fish::{audit_inequalities, consecutive_d, find_fish, tail_equivalence, Fish, FishReport, TailEquivalence};
pub use geom::{Point, Q};
pub use io::{Claim, FamilyFile, Report, FORMAT_VERSION};
pub use position::{
    are_homotopic, intersection_number, joint_realization, remove_puncture, RealizeOptions, RealizedFamily,
};
