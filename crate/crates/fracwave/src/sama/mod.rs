//! Semi-algebraic mode analysis (stub).
