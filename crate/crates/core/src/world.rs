//! Grid geometry and materials shared by generation, simulation and rendering.

use serde::{Deserialize, Serialize};

pub const WORLD_SIZE: i32 = 64;
pub const WORLD_CELLS: usize = (WORLD_SIZE * WORLD_SIZE) as usize;

/// Contents of one grid cell. The discriminant is the id used in the semantic
/// grid of the info record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum Material {
    Water = 0,
    Sand = 1,
    Grass = 2,
    Tree = 3,
    Path = 4,
    Stone = 5,
    Coal = 6,
    Iron = 7,
    Diamond = 8,
    Lava = 9,
    Table = 10,
    Furnace = 11,
    /// A sapling planted by the player. The growing plant itself is an entity.
    Sapling = 12,
}

impl Material {
    pub const ALL: [Material; 13] = [
        Material::Water,
        Material::Sand,
        Material::Grass,
        Material::Tree,
        Material::Path,
        Material::Stone,
        Material::Coal,
        Material::Iron,
        Material::Diamond,
        Material::Lava,
        Material::Table,
        Material::Furnace,
        Material::Sapling,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Option<Self> {
        Self::ALL.get(id as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Material::Water => "water",
            Material::Sand => "sand",
            Material::Grass => "grass",
            Material::Tree => "tree",
            Material::Path => "path",
            Material::Stone => "stone",
            Material::Coal => "coal",
            Material::Iron => "iron",
            Material::Diamond => "diamond",
            Material::Lava => "lava",
            Material::Table => "table",
            Material::Furnace => "furnace",
            Material::Sapling => "sapling",
        }
    }

    /// Ground the player and land creatures can stand on.
    #[inline]
    pub fn is_walkable(self) -> bool {
        matches!(self, Material::Grass | Material::Sand | Material::Path)
    }

    /// Materials that can be mined with the right pickaxe.
    pub fn is_mineable(self) -> bool {
        matches!(
            self,
            Material::Stone | Material::Coal | Material::Iron | Material::Diamond
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
}

impl Pos {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn step(self, dir: Dir) -> Self {
        let (dx, dy) = dir.delta();
        Self::new(self.x + dx, self.y + dy)
    }

    #[inline]
    pub fn chebyshev(self, other: Pos) -> i32 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    #[inline]
    pub fn manhattan(self, other: Pos) -> i32 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }

    #[inline]
    pub fn in_bounds(self) -> bool {
        (0..WORLD_SIZE).contains(&self.x) && (0..WORLD_SIZE).contains(&self.y)
    }

    /// Inside the map and off the immutable one-cell border ring.
    #[inline]
    pub fn in_interior(self) -> bool {
        (1..WORLD_SIZE - 1).contains(&self.x) && (1..WORLD_SIZE - 1).contains(&self.y)
    }

    /// Row-major cell index. Caller guarantees `in_bounds`.
    #[inline]
    pub fn index(self) -> usize {
        (self.y * WORLD_SIZE + self.x) as usize
    }

    pub fn from_index(index: usize) -> Self {
        Self::new(index as i32 % WORLD_SIZE, index as i32 / WORLD_SIZE)
    }
}

/// Grid direction. North is decreasing `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    North,
    South,
    East,
    West,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::North, Dir::South, Dir::East, Dir::West];

    #[inline]
    pub fn delta(self) -> (i32, i32) {
        match self {
            Dir::North => (0, -1),
            Dir::South => (0, 1),
            Dir::East => (1, 0),
            Dir::West => (-1, 0),
        }
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::North => Dir::South,
            Dir::South => Dir::North,
            Dir::East => Dir::West,
            Dir::West => Dir::East,
        }
    }

    /// Primary and secondary direction from `from` toward `to`, longer axis
    /// first. Ties prefer the horizontal axis.
    pub fn toward(from: Pos, to: Pos) -> (Option<Dir>, Option<Dir>) {
        let dx = to.x - from.x;
        let dy = to.y - from.y;
        let h = match dx.signum() {
            1 => Some(Dir::East),
            -1 => Some(Dir::West),
            _ => None,
        };
        let v = match dy.signum() {
            1 => Some(Dir::South),
            -1 => Some(Dir::North),
            _ => None,
        };
        if dx.abs() >= dy.abs() {
            (h.or(v), if h.is_some() { v } else { None })
        } else {
            (v, h)
        }
    }
}

/// The 64x64 material grid of one world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorldGrid {
    cells: Box<[Material]>,
    /// Cells carved as tunnels during generation; skeletons live here.
    tunnels: Box<[bool]>,
    pub spawn_point: Pos,
}

impl WorldGrid {
    pub fn filled(material: Material) -> Self {
        Self {
            cells: vec![material; WORLD_CELLS].into_boxed_slice(),
            tunnels: vec![false; WORLD_CELLS].into_boxed_slice(),
            spawn_point: Pos::new(WORLD_SIZE / 2, WORLD_SIZE / 2),
        }
    }

    #[inline]
    pub fn get(&self, pos: Pos) -> Option<Material> {
        if pos.in_bounds() {
            Some(self.cells[pos.index()])
        } else {
            None
        }
    }

    #[inline]
    pub fn at(&self, pos: Pos) -> Material {
        self.cells[pos.index()]
    }

    #[inline]
    pub fn set(&mut self, pos: Pos, material: Material) {
        self.cells[pos.index()] = material;
    }

    #[inline]
    pub fn is_tunnel(&self, pos: Pos) -> bool {
        self.tunnels[pos.index()]
    }

    pub fn set_tunnel(&mut self, pos: Pos, tunnel: bool) {
        self.tunnels[pos.index()] = tunnel;
    }

    pub fn cells(&self) -> &[Material] {
        &self.cells
    }

    /// Material ids in row-major order.
    pub fn semantic(&self) -> Vec<u8> {
        self.cells.iter().map(|m| m.id()).collect()
    }

    pub fn count(&self, material: Material) -> usize {
        self.cells.iter().filter(|&&m| m == material).count()
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> {
        (0..WORLD_CELLS).map(Pos::from_index)
    }
}
