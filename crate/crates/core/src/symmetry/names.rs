use std::fmt;
use std::str::FromStr;

/// The 17 wallpaper and 7 frieze groups, in orbifold notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupName {
    Star632,
    G632,
    Star442,
    G442,
    Star333,
    G333,
    Star2222,
    G2222,
    FourStar2,
    ThreeStar3,
    TwoStar22,
    TwoTwoStar,
    TwoTwoCross,
    StarStar,
    StarCross,
    CrossCross,
    Circle,
    InfInf,
    StarInfInf,
    InfStar,
    InfCross,
    TwoTwoInf,
    TwoStarInf,
    StarTwoTwoInf,
}

impl GroupName {
    pub const WALLPAPER: [GroupName; 17] = [
        GroupName::Star632,
        GroupName::G632,
        GroupName::Star442,
        GroupName::G442,
        GroupName::Star333,
        GroupName::G333,
        GroupName::Star2222,
        GroupName::G2222,
        GroupName::FourStar2,
        GroupName::ThreeStar3,
        GroupName::TwoStar22,
        GroupName::TwoTwoStar,
        GroupName::TwoTwoCross,
        GroupName::StarStar,
        GroupName::StarCross,
        GroupName::CrossCross,
        GroupName::Circle,
    ];

    pub const FRIEZE: [GroupName; 7] = [
        GroupName::InfInf,
        GroupName::StarInfInf,
        GroupName::InfStar,
        GroupName::InfCross,
        GroupName::TwoTwoInf,
        GroupName::TwoStarInf,
        GroupName::StarTwoTwoInf,
    ];

    pub fn is_frieze(self) -> bool {
        GroupName::FRIEZE.contains(&self)
    }

    pub fn orbifold(self) -> &'static str {
        match self {
            GroupName::Star632 => "∗632",
            GroupName::G632 => "632",
            GroupName::Star442 => "∗442",
            GroupName::G442 => "442",
            GroupName::Star333 => "∗333",
            GroupName::G333 => "333",
            GroupName::Star2222 => "∗2222",
            GroupName::G2222 => "2222",
            GroupName::FourStar2 => "4∗2",
            GroupName::ThreeStar3 => "3∗3",
            GroupName::TwoStar22 => "2∗22",
            GroupName::TwoTwoStar => "22∗",
            GroupName::TwoTwoCross => "22×",
            GroupName::StarStar => "∗∗",
            GroupName::StarCross => "∗×",
            GroupName::CrossCross => "××",
            GroupName::Circle => "○",
            GroupName::InfInf => "∞∞",
            GroupName::StarInfInf => "∗∞∞",
            GroupName::InfStar => "∞∗",
            GroupName::InfCross => "∞×",
            GroupName::TwoTwoInf => "22∞",
            GroupName::TwoStarInf => "2∗∞",
            GroupName::StarTwoTwoInf => "∗22∞",
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.orbifold())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown group name {0:?}")]
pub struct UnknownGroup(pub String);

impl FromStr for GroupName {
    type Err = UnknownGroup;

    /// Accepts the orbifold spelling and an ASCII form (`*` `x` `o` `inf`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s
            .trim()
            .replace('*', "∗")
            .replace('x', "×")
            .replace("inf", "∞")
            .replace('o', "○");
        GroupName::WALLPAPER
            .iter()
            .chain(GroupName::FRIEZE.iter())
            .copied()
            .find(|g| g.orbifold() == norm)
            .ok_or_else(|| UnknownGroup(s.to_string()))
    }
}
