//! Loading fields, profiles and algebras from command-line arguments.

use std::fs;
use std::path::Path;

use calabi_core::mesh::{
    octahedron, parse_off, parse_values, torus, BumpField, FixtureSpec, MeshDocument, ScalarField,
    TriMesh,
};
use calabi_core::profile::Profile1D;
use calabi_core::qh::{builtin_algebra, AlgebraError, FrobeniusAlgebra};

use crate::args::FieldArgs;
use crate::error::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Meshes of the `fixture` command that are not named fields.
fn extra_mesh(name: &str) -> Option<TriMesh> {
    match name {
        "octahedron" => Some(octahedron()),
        "torus" => Some(torus(12, 8)),
        _ => None,
    }
}

/// The mesh document of a fixture; the extra meshes carry the height field.
pub fn fixture_document(name: &str, level: u32) -> Result<MeshDocument, CliError> {
    if let Some(spec) = FixtureSpec::from_name(name) {
        return Ok(MeshDocument::from_field(&spec.field(level)));
    }
    let mesh = extra_mesh(name).ok_or_else(|| {
        CliError::validation(
            "UnknownFixture",
            format!(
                "unknown fixture `{name}` (expected height, two-bump, three-bump, \
                 perturbed-height, octahedron or torus)"
            ),
        )
    })?;
    let mut doc = MeshDocument::from_mesh(&mesh);
    doc.values = Some(height_values(&doc.vertices));
    Ok(doc)
}

fn height_values(vertices: &[[f64; 3]]) -> Vec<f64> {
    let h = BumpField::height();
    vertices.iter().map(|&p| h.eval(p)).collect()
}

/// A mesh document from `fixture:NAME[:LEVEL]`, an `.off` file or a JSON
/// mesh file.
fn document(source: &str) -> Result<MeshDocument, CliError> {
    if let Some(rest) = source.strip_prefix("fixture:") {
        let (name, level) = match rest.split_once(':') {
            Some((name, level)) => {
                let level = level.parse().map_err(|_| {
                    CliError::validation("ParseError", format!("invalid fixture level `{level}`"))
                })?;
                (name, level)
            }
            None => (rest, 4),
        };
        return fixture_document(name, level);
    }
    let path = Path::new(source);
    let text = read(path)?;
    let is_off = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("off"));
    Ok(if is_off {
        MeshDocument::from_mesh(&parse_off(&text)?)
    } else {
        MeshDocument::from_json(&text)?
    })
}

pub fn load_field(source: &str, args: &FieldArgs) -> Result<ScalarField, CliError> {
    let doc = document(source)?;
    let values = if let Some(path) = &args.values {
        Some(parse_values(&read(path)?)?)
    } else if args.height {
        Some(height_values(&doc.vertices))
    } else {
        None
    };
    Ok(doc.into_field(values)?)
}

/// `id`, inline JSON, or a JSON file.
pub fn load_profile(arg: &str) -> Result<Profile1D, CliError> {
    if arg == "id" {
        return Ok(Profile1D::identity());
    }
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    Ok(Profile1D::from_json(&text)?)
}

pub fn load_profiles(path: &Path) -> Result<Vec<Profile1D>, CliError> {
    let profiles: Vec<Profile1D> = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::validation("InvalidProfile", format!("{}: {e}", path.display())))?;
    for p in &profiles {
        p.validate()?;
    }
    Ok(profiles)
}

/// A built-in algebra, or a definition file when no built-in has that name.
pub fn load_algebra(source: &str) -> Result<FrobeniusAlgebra, CliError> {
    match builtin_algebra(source) {
        Ok(alg) => Ok(alg),
        Err(AlgebraError::UnknownName(_)) if Path::new(source).is_file() => {
            Ok(FrobeniusAlgebra::from_json(&read(Path::new(source))?)?)
        }
        Err(e) => Err(e.into()),
    }
}
