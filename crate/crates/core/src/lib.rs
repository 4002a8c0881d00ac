//! Exact computations around derived quotients of finite-dimensional algebras
//! by idempotents, contraction algebras of quivers with relations, and stable
//! Ext over hypersurface singularities via matrix factorizations.

pub mod algebra;
pub mod crosscheck;
pub mod derived;
pub mod exactlin;
pub mod expr;
pub mod poly;
pub mod quiver;
pub mod matfac;
pub mod report;
pub mod singlocal;
