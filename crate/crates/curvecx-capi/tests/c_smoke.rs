//! Compiles and runs a small C program against the generated header and
//! the static library, exercising the ABI the way a foreign binding would.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <assert.h>
#include <stdio.h>
#include <string.h>
#include "curvecx.h"

int main(void) {
    CxSurface *surface = cx_surface_parse("N1,2");
    assert(surface != NULL);
    assert(cx_surface_euler_char(surface) == -1);
    assert(cx_surface_small_complex(surface) == CX_SMALL_COMPLEX_TWO_VERTICES);

    int64_t lo = 0, hi = 0;
    bool extrapolated = true;
    assert(cx_surface_simplex_range(surface, &lo, &hi, &extrapolated) == CX_STATUS_OK);
    assert(lo == 0 && hi == 0 && !extrapolated);

    CxTriangulation *tri = cx_tri_reference(surface);
    assert(tri != NULL);
    assert(cx_tri_triangle_count(tri) == 2);
    assert(cx_tri_edge_count(tri) == 3);

    CxCurveSet *set = cx_curves_enumerate(tri, 6);
    assert(set != NULL);
    assert(cx_curveset_len(set) == 2);

    uint32_t a[3], b[3];
    assert(cx_curveset_weights(set, 0, a, 3) == CX_STATUS_OK);
    assert(cx_curveset_weights(set, 1, b, 3) == CX_STATUS_OK);
    bool disjoint = true;
    assert(cx_curves_disjoint(tri, a, b, 3, &disjoint) == CX_STATUS_OK);
    assert(!disjoint);

    CxVerdict verdict;
    CxCurveKind kind;
    int32_t k;
    assert(cx_curve_classify(tri, a, 3, &verdict, &kind, &k) == CX_STATUS_OK);
    assert(verdict == CX_VERDICT_NONTRIVIAL);
    assert(kind == CX_CURVE_KIND_ONE_SIDED);

    CxSurface *bad = cx_surface_parse("Q9");
    assert(bad == NULL);
    assert(strlen(cx_last_error()) > 0);

    cx_curveset_free(set);
    cx_tri_free(tri);
    cx_surface_free(surface);
    puts("c smoke ok");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    // the static library lands in the workspace target directory
    let lib_dir = {
        let mut exe = std::env::current_exe().unwrap();
        // target/debug/deps/test-... -> target/debug
        exe.pop();
        exe.pop();
        exe
    };
    let lib = lib_dir.join("libcurvecx_capi.a");
    assert!(lib.exists(), "static library at {}", lib.display());

    let dir = std::env::temp_dir().join(format!("curvecx-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("smoke.c");
    let exe = dir.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "run failed: {}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "c smoke ok");
    let _ = std::fs::remove_dir_all(&dir);
}
