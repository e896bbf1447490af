fn main() {
    // Banded Hermitian eigensolves go through LAPACK's zhbev/dsbev, provided by
    // the system OpenBLAS; no vendored sources, the shared library must be on
    // the default linker path (libopenblas-dev or equivalent).
    println!("cargo:rustc-link-lib=dylib=openblas");
}
