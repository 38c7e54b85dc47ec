fn main() {
    // System OpenBLAS carries the full LAPACK symbol set (dgeev_/zgeev_)
    // used by the mode-analysis eigensolver.
    println!("cargo:rustc-link-lib=dylib=openblas");
}
