use adjoint_blocks::adjoint::report;
use adjoint_blocks::block_arith::{ext2, oracle, sym2, tensor};
use adjoint_blocks::chevalley::{containment_checks, oracle_types};
use adjoint_blocks::classes::Class;
use adjoint_blocks::{JordanType, Kind};

/// A single disagreement between the closed forms and the matrices.
#[derive(Clone, Debug)]
pub struct Failure {
    pub subject: String,
    pub module: String,
    pub expected: String,
    pub got: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: module={} expected={} got={}", self.subject, self.module, self.expected, self.got)
    }
}

fn compare(out: &mut Vec<Failure>, subject: &str, module: &str, expected: &JordanType, got: &JordanType) {
    if expected != got {
        out.push(Failure {
            subject: subject.to_string(),
            module: module.to_string(),
            expected: expected.to_compact(),
            got: got.to_compact(),
        });
    }
}

/// Formula against oracle on g_sc, g_sc/Z, [g_ad, g_ad], g_ad, plus the kernel containments.
pub fn verify_class(c: &Class) -> Vec<Failure> {
    let subject = format!("ell={} {} {}", c.ell(), c.kind(), c);
    let error = |module: &str, e: String| Failure {
        subject: subject.clone(),
        module: module.to_string(),
        expected: "no error".into(),
        got: e,
    };
    let r = match report(c) {
        Ok(r) => r,
        Err(e) => return vec![error("formula", e.to_string())],
    };
    let o = match oracle_types(c) {
        Ok(o) => o,
        Err(e) => return vec![error("oracle", e.to_string())],
    };
    let mut out = Vec::new();
    compare(&mut out, &subject, "g_sc", &r.type_gsc, &o.sc);
    compare(&mut out, &subject, "g_sc/Z", &r.type_derived, &o.sc_mod_center);
    compare(&mut out, &subject, "[g_ad,g_ad]", &r.type_derived, &o.derived);
    compare(&mut out, &subject, "g_ad", &r.type_gad, &o.ad);
    match containment_checks(c) {
        Ok(checks) => out.extend(checks.into_iter().filter(|k| !k.holds).map(|k| Failure {
            subject: subject.clone(),
            module: "containment".into(),
            expected: k.statement,
            got: "violated".into(),
        })),
        Err(e) => out.push(error("containment", e.to_string())),
    }
    out
}

/// Closed forms for `V_m ⊗ V_n`, `S²(V_n)`, `∧²(V_n)` against induced matrix actions, `n <= max_n`.
pub fn verify_block_arith(max_n: usize) -> (usize, Vec<Failure>) {
    let mut count = 0;
    let mut out = Vec::new();
    for kind in [Kind::Unipotent, Kind::Nilpotent] {
        for n in 1..=max_n {
            for m in 1..=n {
                count += 1;
                let s = format!("{kind} V_{m} ⊗ V_{n}");
                compare(&mut out, &s, "tensor", &tensor(m, n, kind), &oracle::tensor_type(m, n, kind));
            }
            count += 2;
            compare(&mut out, &format!("{kind} S²(V_{n})"), "sym2", &sym2(n, kind), &oracle::sym2_type(n, kind));
            compare(&mut out, &format!("{kind} ∧²(V_{n})"), "ext2", &ext2(n, kind), &oracle::ext2_type(n, kind));
        }
    }
    (count, out)
}
