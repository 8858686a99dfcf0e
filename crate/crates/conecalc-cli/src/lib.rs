//! Library side of the conecalc command line: the seeded verification suite
//! that exercises the sharp integral inequalities on batches of random sums
//! of squares, with exact checks where exactness is possible.

pub mod suite;
