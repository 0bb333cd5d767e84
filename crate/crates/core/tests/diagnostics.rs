use bioclass::fixtures::{fixture, loader, CLASS_FILES};
use bioclass::frontend::load_triple;
use bioclass::rules::WfOptions;

/// Diagnostics for the bundled model `name` after replacing `from` by `to`
/// in `file`, rendered one per line.
fn corrupt_in(name: &str, file: &str, from: &str, to: &str) -> Vec<String> {
    let f = fixture(name).unwrap();
    let original = if file == f.file_name() {
        f.model
    } else {
        CLASS_FILES.iter().find(|(n, _)| *n == file).unwrap().1
    };
    assert!(original.contains(from), "{from}");
    let l = loader().with(file, &original.replacen(from, to, 1));
    let diags = match load_triple(&l, &f.file_name()) {
        Ok(t) => t.check(WfOptions::default()),
        Err(d) => d,
    };
    diags.iter().map(|d| d.to_string()).collect()
}

fn corrupt(name: &str, from: &str, to: &str) -> Vec<String> {
    corrupt_in(name, &format!("{name}.bmodel"), from, to)
}

const MM_DIS: &str = "invoke ES.dis(E, P);";

#[test]
fn invocation_typing() {
    assert_eq!(
        corrupt("michaelis-menten", MM_DIS, "invoke ES.dis(E);"),
        ["michaelis-menten.bmodel:15:1: error[arity-mismatch]: `EnzComp.dis` takes 2 argument(s) but `ES.dis(E)` passes 1"]
    );
    assert_eq!(
        corrupt("michaelis-menten", MM_DIS, "invoke E.dis(E, P);"),
        ["michaelis-menten.bmodel:15:1: error[method-not-found]: class `Enz` has no method `dis`"]
    );
    assert_eq!(
        corrupt("michaelis-menten", MM_DIS, "invoke X.dis(E, P);"),
        ["michaelis-menten.bmodel:15:1: error[untyped-receiver]: receiver `X` of `X.dis(E, P)` has no type"]
    );
    assert_eq!(
        corrupt("michaelis-menten", MM_DIS, "invoke ES.dis(E, Q);"),
        ["michaelis-menten.bmodel:15:1: error[untyped-argument]: argument 2 of `ES.dis(E, Q)` (`Q`) has no type"]
    );
}

#[test]
fn type_environment() {
    assert_eq!(
        corrupt("michaelis-menten", "  P: Mol;", "  P: Mol;\n  P: Enz;"),
        ["michaelis-menten.bmodel:9:3: error[conflicting-type]: value `P` typed both `Mol` (at michaelis-menten.bmodel:8:3) and `Enz`"]
    );
    assert_eq!(
        corrupt("michaelis-menten", "  P: Mol;", "  P: Protein;"),
        ["michaelis-menten.bmodel:8:3: error[unknown-class]: value `P` is typed with undeclared class `Protein`"]
    );
    assert_eq!(
        corrupt("aquaporin-psys-sim", "  3: Lab;", ""),
        [
            "aquaporin-psys-sim.bmodel:19:5: error[untyped-argument]: argument 2 of `A.in(w, 3)` (`3`) has no type",
            "aquaporin-psys-sim.bmodel:20:5: error[untyped-argument]: argument 2 of `A.in(u, 3)` (`3`) has no type",
        ]
    );
}

#[test]
fn files_and_syntax() {
    assert_eq!(
        corrupt("michaelis-menten", "state { E + S }", "state { E + S "),
        ["michaelis-menten.bmodel:13:1: error[syntax]: expected `}`, found `invoke`"]
    );
    assert_eq!(
        corrupt("michaelis-menten", "use \"kinetics.bclass\"", "use \"kinetic.bclass\""),
        ["michaelis-menten.bmodel:1:5: error[io]: cannot read `kinetic.bclass`: no such file"]
    );
    assert_eq!(
        corrupt("aquaporin-psys-sim", "formalism psys", "formalism cls"),
        ["aquaporin-psys-sim.bmodel:16:12: error[syntax]: expected `}`, found `1`"]
    );
}

#[test]
fn model_structure() {
    assert_eq!(
        corrupt("aquaporin-cls", "state { w | w", "state { $X | w"),
        ["aquaporin-cls.bmodel:11:1: error[non-ground-state]: the initial term must not contain variables"]
    );
    assert_eq!(
        corrupt("aquaporin-psys-sim", "membrane 3 {", "membrane 2 {"),
        ["aquaporin-psys-sim.bmodel:24:5: error[duplicate-label]: membrane label `2` is used more than once"]
    );
}

#[test]
fn class_files() {
    let k = "kinetics.bclass";
    let cases = [
        (
            "ass(Mol S, EnzComp ES)",
            "ass(Mol this, EnzComp ES)",
            "kinetics.bclass:6:7: error[this-param]: `this` used as a parameter of `Enz.ass`",
        ),
        (
            "class EnzComp extends Enz",
            "class EnzComp extends Complex",
            "kinetics.bclass:11:1: error[missing-class]: class `EnzComp` extends undeclared class `Complex`",
        ),
        (
            "    this -> E + P;",
            "    this -> E + P + X;",
            "kinetics.bclass:13:5: error[untyped-value]: in `EnzComp.dis`: `X` is neither a parameter nor a typed value",
        ),
        (
            "class Mol extends Object { }",
            "class Mol extends Object { }\nclass Mol extends Object { }",
            "kinetics.bclass:4:1: error[duplicate-class]: class `Mol` is declared more than once (first at kinetics.bclass:3:1)",
        ),
    ];
    for (from, to, expected) in cases {
        assert_eq!(corrupt_in("michaelis-menten", k, from, to), [expected]);
    }
}
