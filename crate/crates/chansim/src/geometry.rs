//! Points, axis-aligned boxes and reflective faces.
//!
//! Every reflector in a scene is an axis-aligned plane (building walls,
//! roofs, the ground), which keeps mirroring and intersection exact and
//! cheap: a reflection is a single coordinate flip.

use serde::{Deserialize, Serialize};

/// Endpoint shaving for blockage tests, as a fraction of segment length.
/// Reflection points sit exactly on building faces; without shaving they
/// would register as hits against their own reflector.
const T_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;

    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Vec3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dist(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    pub fn axis(self, a: usize) -> f64 {
        match a {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }

    pub fn with_axis(mut self, a: usize, v: f64) -> Vec3 {
        match a {
            0 => self.x = v,
            1 => self.y = v,
            _ => self.z = v,
        }
        self
    }

    /// Lerp along the segment self -> q at parameter t.
    pub fn at(self, q: Vec3, t: f64) -> Vec3 {
        Vec3::new(
            self.x + (q.x - self.x) * t,
            self.y + (q.y - self.y) * t,
            self.z + (q.z - self.z) * t,
        )
    }
}

/// Axis-aligned building: footprint rectangle extruded from the ground.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Building {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub height: f64,
}

impl Building {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.x_min < self.x_max && self.y_min < self.y_max) {
            return Err("building footprint has non-positive extent".into());
        }
        if self.height <= 0.0 {
            return Err("building height must be positive".into());
        }
        Ok(())
    }

    /// Inclusive containment with a small margin; points on a face count
    /// as inside so they are never used as user or BS positions.
    pub fn contains(&self, p: Vec3) -> bool {
        p.x >= self.x_min - 1e-9
            && p.x <= self.x_max + 1e-9
            && p.y >= self.y_min - 1e-9
            && p.y <= self.y_max + 1e-9
            && p.z >= -1e-9
            && p.z <= self.height + 1e-9
    }

    fn slab(&self, a: usize) -> (f64, f64) {
        match a {
            0 => (self.x_min, self.x_max),
            1 => (self.y_min, self.y_max),
            _ => (0.0, self.height),
        }
    }
}

/// True when the open segment p->q passes through the box interior.
/// Endpoints are shaved by `T_EPS` and grazing contacts are ignored, so a
/// leg that merely starts or ends on a face does not count as blocked.
pub fn segment_blocked(p: Vec3, q: Vec3, b: &Building) -> bool {
    let mut t0 = T_EPS;
    let mut t1 = 1.0 - T_EPS;
    for a in 0..3 {
        let (lo, hi) = b.slab(a);
        let pa = p.axis(a);
        let d = q.axis(a) - pa;
        if d.abs() < 1e-15 {
            if pa <= lo || pa >= hi {
                return false;
            }
        } else {
            let mut ta = (lo - pa) / d;
            let mut tb = (hi - pa) / d;
            if ta > tb {
                std::mem::swap(&mut ta, &mut tb);
            }
            t0 = t0.max(ta);
            t1 = t1.min(tb);
            if t0 >= t1 {
                return false;
            }
        }
    }
    t1 - t0 > T_EPS
}

pub fn segment_clear(p: Vec3, q: Vec3, buildings: &[Building]) -> bool {
    buildings.iter().all(|b| !segment_blocked(p, q, b))
}

/// One reflective axis-aligned face. `sign` picks the outward halfspace:
/// a point reflects off this face only from `sign * (p[axis] - coord) > 0`.
#[derive(Debug, Clone, Copy)]
pub struct Surface {
    pub axis: usize,
    pub coord: f64,
    pub sign: f64,
    u_axis: usize,
    u_min: f64,
    u_max: f64,
    v_axis: usize,
    v_min: f64,
    v_max: f64,
}

impl Surface {
    pub fn ground() -> Surface {
        Surface {
            axis: 2,
            coord: 0.0,
            sign: 1.0,
            u_axis: 0,
            u_min: f64::NEG_INFINITY,
            u_max: f64::INFINITY,
            v_axis: 1,
            v_min: f64::NEG_INFINITY,
            v_max: f64::INFINITY,
        }
    }

    /// Four walls plus the roof. The underside never reflects: buildings
    /// sit on the ground.
    pub fn of_building(b: &Building) -> Vec<Surface> {
        let wall = |axis: usize, coord: f64, sign: f64| {
            let u_axis = if axis == 0 { 1 } else { 0 };
            let (u_min, u_max) = b.slab(u_axis);
            Surface {
                axis,
                coord,
                sign,
                u_axis,
                u_min,
                u_max,
                v_axis: 2,
                v_min: 0.0,
                v_max: b.height,
            }
        };
        vec![
            wall(0, b.x_min, -1.0),
            wall(0, b.x_max, 1.0),
            wall(1, b.y_min, -1.0),
            wall(1, b.y_max, 1.0),
            Surface {
                axis: 2,
                coord: b.height,
                sign: 1.0,
                u_axis: 0,
                u_min: b.x_min,
                u_max: b.x_max,
                v_axis: 1,
                v_min: b.y_min,
                v_max: b.y_max,
            },
        ]
    }

    pub fn on_reflective_side(&self, p: Vec3) -> bool {
        self.sign * (p.axis(self.axis) - self.coord) > 1e-9
    }

    pub fn mirror(&self, p: Vec3) -> Vec3 {
        p.with_axis(self.axis, 2.0 * self.coord - p.axis(self.axis))
    }

    /// Intersection of the segment from `from` (on the reflective side)
    /// toward `image` (on the other side) with this face's rectangle.
    pub fn hit(&self, from: Vec3, image: Vec3) -> Option<Vec3> {
        if !self.on_reflective_side(from) {
            return None;
        }
        let d = image.axis(self.axis) - from.axis(self.axis);
        if d.abs() < 1e-15 {
            return None;
        }
        let t = (self.coord - from.axis(self.axis)) / d;
        if !(t > 1e-12 && t < 1.0 - 1e-12) {
            return None;
        }
        let p = from.at(image, t).with_axis(self.axis, self.coord);
        let u = p.axis(self.u_axis);
        let v = p.axis(self.v_axis);
        if u < self.u_min - 1e-9 || u > self.u_max + 1e-9 {
            return None;
        }
        if v < self.v_min - 1e-9 || v > self.v_max + 1e-9 {
            return None;
        }
        Some(p)
    }
}
