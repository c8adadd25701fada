//! Semantic composition of the two model constructions (stub).

pub struct SignallingView;
pub struct RoundtripReport;
pub struct TuSeparationReport;
pub struct AxSymBridgeReport;
pub fn roundtrip_check() {}
pub fn tu_separation() {}
pub fn axsym_bridge_check() {}
