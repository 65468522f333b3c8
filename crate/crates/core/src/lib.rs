//! irslab: a laboratory for explicit constructions of invariant random
//! subgroups of the hyperbolic plane's isometry group, and the arithmetic
//! that separates them.
//!
//! The crate is organized around five computational pillars:
//!
//! * [`hyp2`] — an exact-contract kernel for the hyperbolic plane: isometries
//!   as unimodular 2x2 matrices up to sign, distances, translation lengths,
//!   boundary fixed points and north-south dynamics.
//! * [`pantsurf`] — hyperbolic pairs of pants from boundary lengths,
//!   Fenchel-Nielsen gluing along trees, random trees of pants, and
//!   injectivity-radius bounds with a brute-force systole oracle.
//! * [`symdyn`] — subshifts cut out by families of sample words, periodic
//!   point detection on de Bruijn graphs, shift-invariant samplers, and
//!   free-group geodesic/axis combinatorics.
//! * [`glue`] — block gluings of a binary sequence, volume reweighting of
//!   shift-invariant measures, run-length chunk bookkeeping and the covering
//!   obstruction, plus 2-D chain realizations.
//! * [`arith`] — p-adic Hilbert symbols with a search oracle, quadratic form
//!   invariants over Q(sqrt d), and non-commensurability obstructions.
//!
//! [`chabauty`] supplies ball-window proxies for Chabauty proximity used in
//! convergence experiments, and [`seeding`] fixes the seed-derivation scheme
//! shared by every stochastic entry point.

pub mod arith;
pub mod chabauty;
pub mod glue;
pub mod hyp2;
pub mod pantsurf;
pub mod seeding;
pub mod symdyn;
