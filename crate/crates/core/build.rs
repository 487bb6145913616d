use std::env;
use std::fs;
use std::path::PathBuf;

/// The netlib system link pulls in `-lcblas`, but Debian-family OpenBLAS
/// installs export the CBLAS interface from `libblas` itself and ship no
/// separate `libcblas.so`. Provide the missing name as a linker script that
/// redirects to `-lblas`.
fn main() {
    let out_dir = PathBuf::from(env::var("OUT_DIR").expect("OUT_DIR set by cargo"));
    let shim = out_dir.join("libcblas.so");
    fs::write(&shim, "INPUT(-lblas)\n").expect("write cblas shim");
    println!("cargo:rustc-link-search=native={}", out_dir.display());
}
