use std::fmt::Write;

use super::{Curve1D, IsoSurfaceMesh, ScalarField3D};
use crate::numfmt::sig;

const DIGITS: usize = 9;

fn xyz(v: &[f64; 3]) -> String {
    format!(
        "{} {} {}",
        sig(v[0], DIGITS),
        sig(v[1], DIGITS),
        sig(v[2], DIGITS)
    )
}

/// Wavefront OBJ, 1-based face indices.
pub fn mesh_obj(mesh: &IsoSurfaceMesh) -> String {
    let mut out = String::new();
    for v in &mesh.vertices {
        writeln!(out, "v {}", xyz(v)).unwrap();
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).unwrap();
    }
    out
}

pub fn mesh_ply(mesh: &IsoSurfaceMesh) -> String {
    let mut out = String::new();
    out.push_str("ply\nformat ascii 1.0\n");
    writeln!(out, "element vertex {}", mesh.vertices.len()).unwrap();
    out.push_str("property float x\nproperty float y\nproperty float z\n");
    writeln!(out, "element face {}", mesh.triangles.len()).unwrap();
    out.push_str("property list uchar int vertex_indices\nend_header\n");
    for v in &mesh.vertices {
        writeln!(out, "{}", xyz(v)).unwrap();
    }
    for t in &mesh.triangles {
        writeln!(out, "3 {} {} {}", t[0], t[1], t[2]).unwrap();
    }
    out
}

/// `c1,c2,c3,value`, physical points only.
pub fn field_csv(field: &ScalarField3D) -> String {
    let n = field.resolution();
    let mut out = String::from("c1,c2,c3,value\n");
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                if let Some(v) = field.get(i, j, k) {
                    let p = field.point(i, j, k);
                    writeln!(
                        out,
                        "{},{},{},{}",
                        sig(p[0], DIGITS),
                        sig(p[1], DIGITS),
                        sig(p[2], DIGITS),
                        sig(v, DIGITS)
                    )
                    .unwrap();
                }
            }
        }
    }
    out
}

/// `x,value`
pub fn curve_csv(curve: &Curve1D) -> String {
    let mut out = String::from("x,value\n");
    for (x, v) in curve.samples() {
        writeln!(out, "{},{}", sig(*x, DIGITS), sig(*v, DIGITS)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::{extract_isosurface, werner_curve};

    #[test]
    fn obj_and_ply_layout() {
        let field =
            ScalarField3D::from_lattice(3, |k, _| Some(if k == [0, 0, 0] { 1.0 } else { 0.0 }))
                .unwrap();
        let mesh = extract_isosurface(&field, 0.5).unwrap();
        assert_eq!(mesh.triangles.len(), 8);
        let obj = mesh_obj(&mesh);
        assert!(obj.lines().filter(|l| l.starts_with("v ")).count() == mesh.vertices.len());
        assert!(
            obj.contains("v 0.5 0 0\n")
                || obj.contains("v 0 0.5 0\n")
                || obj.contains("v 0 0 0.5\n")
        );
        assert!(obj
            .lines()
            .filter(|l| l.starts_with("f "))
            .all(|l| !l.contains(" 0")));

        let ply = mesh_ply(&mesh);
        assert!(ply.starts_with("ply\nformat ascii 1.0\nelement vertex 6\n"));
        assert!(ply.contains("element face 8\n"));
        assert_eq!(ply.lines().count(), 9 + 6 + 8);
    }

    #[test]
    fn csv_layouts() {
        let field = ScalarField3D::from_lattice(2, |k, _| (k[0] < 0).then_some(0.25)).unwrap();
        let csv = field_csv(&field);
        assert_eq!(
            csv,
            "c1,c2,c3,value\n-1,-1,-1,0.25\n-1,1,-1,0.25\n-1,-1,1,0.25\n-1,1,1,0.25\n"
        );
        let curve = werner_curve(&[0.0, 1.0]).unwrap();
        assert_eq!(curve_csv(&curve), "x,value\n0,0.5\n1,0.0260890191\n");
    }
}
