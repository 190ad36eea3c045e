//! Exact computations around cocharacter-closed orbits: coefficient fields
//! (including imperfect ones), polynomial factorization, limits along
//! cocharacters, endomorphism and tuple orbits, accessibility graphs and
//! the G2 root-group calculus.

pub mod endo;
pub mod error;
pub mod fields;
pub mod g2;
pub mod limit;
pub mod linalg;
pub mod orbit;
pub mod poly;
pub mod tuple;

pub use error::{Error, Result};
pub use endo::EndoClass;
pub use fields::{Elem, Field, Separability};
pub use limit::{ActionModel, Cocharacter, LimitResult, WeightGrading};
pub use linalg::Matrix;
pub use orbit::{AccessibilityGraph, OrbitModel};
pub use poly::{FactorReport, Poly};
pub use tuple::{GcrReport, ModuleReport};
pub use g2::{Coweight, Root, RootSystem, Word};
