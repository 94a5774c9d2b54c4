//! Construction and bounded-degree certification of double Ore extensions
//! `B = A_P[y1, y2; σ, δ, τ]` over a presented connected graded algebra `A`.
//!
//! All arithmetic is exact. Certificates hold up to an explicit degree bound
//! and say so in their reports.

pub mod exactla;
pub mod ncalg;
pub mod report;
pub mod dedata;
pub mod session;
pub mod extension;
pub mod analysis;
