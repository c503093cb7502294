//! Session language and driver for the `ringlab` command.

pub mod exec;
pub mod syntax;

pub use exec::{run_source, ExecError, Format, Options, Run, Session, Value};
pub use syntax::{parse, print_program, Expr, ExprKind, PolyLit, Pos, Stmt, SyntaxError, Term};
