use proptest::prelude::*;
use silting_core::linalg::{FieldSpec, PrimeField, Rationals};
use silting_core::project::*;
use std::collections::BTreeMap;

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9]{0,3}"
}

fn term() -> impl Strategy<Value = Term> {
    ("-?[0-9]{1,2}(/[1-9])?", prop::collection::vec(name(), 0..3), prop::option::of(name()))
        .prop_map(|(coeff, path, vertex)| Term { coeff, path, vertex })
}

fn module() -> impl Strategy<Value = ModuleSpec> {
    (
        prop::collection::btree_map(name(), 0usize..4, 0..3),
        prop::collection::btree_map(name(), prop::collection::vec(prop::collection::vec("[0-9]", 0..3), 0..3), 0..3),
    )
        .prop_map(|(dims, arrows)| ModuleSpec { dims, arrows })
}

fn complex() -> impl Strategy<Value = ComplexSpec> {
    (
        prop::collection::vec(name(), 0..3),
        prop::collection::vec(name(), 0..3),
        prop::collection::vec(prop::collection::vec(prop::collection::vec(term(), 0..2), 0..3), 0..3),
    )
        .prop_map(|(pm1, p0, sigma)| ComplexSpec { pm1, p0, sigma })
}

fn project_file() -> impl Strategy<Value = ProjectFile> {
    let field = prop_oneof![
        (2u64..50).prop_map(|p| FieldEntry { kind: FieldKind::Fp, p: Some(p) }),
        Just(FieldEntry { kind: FieldKind::Q, p: None }),
    ];
    let quiver = (
        prop::collection::vec(name(), 1..4),
        prop::collection::vec((name(), name(), name()), 0..3),
    )
        .prop_map(|(vertices, arrows)| QuiverSpec {
            vertices,
            arrows: arrows.into_iter().map(|(name, from, to)| ArrowSpec { name, from, to }).collect(),
        });
    let config = (
        prop::option::of(0usize..6),
        prop::option::of(0usize..6),
        prop::option::of(prop::collection::vec(name(), 0..3)),
    )
        .prop_map(|(max_dim, max_dim_e, checks)| Config { max_dim, max_dim_e, checks });
    (
        field,
        quiver,
        prop::collection::vec(prop::collection::vec(term(), 1..3), 0..2),
        prop::collection::btree_map(name(), module(), 0..3),
        prop::collection::btree_map(name(), complex(), 0..3),
        config,
    )
        .prop_map(|(field, quiver, relations, modules, complexes, config)| ProjectFile {
            field,
            quiver,
            relations,
            modules,
            complexes,
            config,
        })
}

proptest! {
    #[test]
    fn json_round_trip_is_identity(file in project_file()) {
        let text = file.to_json();
        let back = ProjectFile::from_json(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_json(), text);
    }
}

fn example_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/projects")
}

#[test]
fn example_projects_survive_save_and_load() {
    let dir = std::env::temp_dir().join(format!("silting-project-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut seen = 0;
    for entry in std::fs::read_dir(example_dir()).unwrap() {
        let path = entry.unwrap().path();
        let file = ProjectFile::load(&path).unwrap();
        let copy = dir.join(path.file_name().unwrap());
        file.save(&copy).unwrap();
        let again = ProjectFile::load(&copy).unwrap();
        assert_eq!(again, file, "{}", path.display());

        let complexes: BTreeMap<_, _> = match file.field.spec().unwrap() {
            FieldSpec::Prime { p } => {
                let pr = Project::build(&again, PrimeField::new(p).unwrap()).unwrap();
                pr.complexes.iter().map(|(k, c)| (k.clone(), (c.m1.dim(), c.m0.dim()))).collect()
            }
            FieldSpec::Rationals => {
                let pr = Project::build(&again, Rationals).unwrap();
                pr.complexes.iter().map(|(k, c)| (k.clone(), (c.m1.dim(), c.m0.dim()))).collect()
            }
        };
        assert_eq!(complexes.len(), file.complexes.len());
        seen += 1;
    }
    assert!(seen >= 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
