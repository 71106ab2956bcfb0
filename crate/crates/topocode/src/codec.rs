//! Topocode packet serialization.
//!
//! ```text
//! offset  size        field
//! 0       4           magic "TPC1"
//! 4       2           width (u16, big-endian)
//! 6       2           height (u16, big-endian)
//! 8       1           bits per pixel (always 8)
//! 9       1           orientation (0 sublevel, 1 superlevel)
//! 10      1           group count G
//! 11      W*H         payload, row-major 8-bit pixels
//! then G groups, ids strictly increasing:
//!         1           homology dimension
//!         2           finite pair count k (u16, big-endian)
//!         1           essential count e
//!         2k          (birth, death) levels
//!         e           essential birth levels
//! ```
//!
//! Coordinates are `round(v * 255)`. The decoder is total: any byte string
//! yields either a packet or a [`DecodeError`] naming the field and offset.
//! A finite pair whose death level is not above its birth level (which only
//! happens after corruption) is dropped with a [`DecodeWarning`] and parsing
//! continues, so a damaged Topocode is still usable.

use std::ops::Range;

use thiserror::Error;

use crate::diagram::{dequantize_value, quantize, QuantizedDiagram, QuantizedGroup};
use crate::error::QuantizeError;
use crate::homology::{BirthDeath, Essential, PersistenceDiagram};
use crate::image::Orientation;

pub const MAGIC: [u8; 4] = *b"TPC1";
/// Bytes before the payload.
pub const HEADER_LEN: usize = 11;
/// Bytes of each group header.
pub const GROUP_HEADER_LEN: usize = 4;
pub const BITS_PER_PIXEL: u8 = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EncodeError {
    #[error("image dimensions {width}x{height} do not fit in 16 bits")]
    DimensionOverflow { width: usize, height: usize },
    #[error("payload has {actual} bytes, expected {expected}")]
    PayloadLength { expected: usize, actual: usize },
    #[error(transparent)]
    Coordinate(#[from] QuantizeError),
    #[error("dimension {dim} has {count} {kind} classes, more than the field can hold")]
    CountOverflow {
        dim: usize,
        count: usize,
        kind: &'static str,
    },
    #[error("homology dimension {0} does not fit in a byte")]
    GroupIdOverflow(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("bad magic at offset 0")]
    BadMagic,
    #[error("truncated packet: field `{field}` needs {needed} bytes at offset {offset}, {available} left")]
    Truncated {
        field: &'static str,
        offset: usize,
        needed: usize,
        available: usize,
    },
    #[error("unsupported bits per pixel {value} at offset 8")]
    UnsupportedBitsPerPixel { value: u8 },
    #[error("unknown orientation flag {value} at offset 9")]
    BadOrientation { value: u8 },
    #[error("group id {id} at offset {offset} does not follow {previous}")]
    NonMonotoneGroupIds { id: u8, previous: u8, offset: usize },
    #[error("{count} trailing bytes at offset {offset}")]
    TrailingBytes { offset: usize, count: usize },
}

/// A recoverable problem found while decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeWarning {
    /// Finite pair with `death <= birth`; it was dropped.
    DegeneratePair {
        group: u8,
        index: usize,
        offset: usize,
        birth: u8,
        death: u8,
    },
}

/// A packet as it travels on the wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packet {
    pub width: u16,
    pub height: u16,
    pub orientation: Orientation,
    pub payload: Vec<u8>,
    pub topocode: QuantizedDiagram,
}

/// Output of [`decode_packet`].
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedPacket {
    pub width: usize,
    pub height: usize,
    pub orientation: Orientation,
    pub payload: Vec<u8>,
    /// Dequantized Topocode with degenerate pairs removed.
    pub diagram: PersistenceDiagram,
    pub warnings: Vec<DecodeWarning>,
}

/// Byte ranges of a serialized packet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketLayout {
    pub payload: Range<usize>,
    /// Group headers (dimension, counts).
    pub group_headers: Vec<Range<usize>>,
    /// Pair and essential levels of each group.
    pub coordinates: Vec<Range<usize>>,
    pub total_len: usize,
}

impl PacketLayout {
    /// Bytes following the payload: group headers plus coordinates.
    pub fn topocode_len(&self) -> usize {
        self.total_len - self.payload.end
    }
}

/// Size in bytes of the Topocode section (everything after the payload) for
/// a diagram with the given per-group counts.
pub fn topocode_section_len(diagram: &QuantizedDiagram) -> usize {
    diagram
        .groups
        .values()
        .map(|g| GROUP_HEADER_LEN + 2 * g.finite.len() + g.essential.len())
        .sum()
}

impl Packet {
    pub fn encode(&self) -> Result<Vec<u8>, EncodeError> {
        let expected = usize::from(self.width) * usize::from(self.height);
        if self.payload.len() != expected {
            return Err(EncodeError::PayloadLength {
                expected,
                actual: self.payload.len(),
            });
        }
        let mut out = Vec::with_capacity(
            HEADER_LEN + self.payload.len() + topocode_section_len(&self.topocode),
        );
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&self.width.to_be_bytes());
        out.extend_from_slice(&self.height.to_be_bytes());
        out.push(BITS_PER_PIXEL);
        out.push(self.orientation.to_flag());
        let group_count = u8::try_from(self.topocode.groups.len())
            .map_err(|_| EncodeError::GroupIdOverflow(self.topocode.groups.len()))?;
        out.push(group_count);
        out.extend_from_slice(&self.payload);
        for (&dim, group) in &self.topocode.groups {
            let id = u8::try_from(dim).map_err(|_| EncodeError::GroupIdOverflow(dim))?;
            let finite = u16::try_from(group.finite.len()).map_err(|_| EncodeError::CountOverflow {
                dim,
                count: group.finite.len(),
                kind: "finite",
            })?;
            let essential =
                u8::try_from(group.essential.len()).map_err(|_| EncodeError::CountOverflow {
                    dim,
                    count: group.essential.len(),
                    kind: "essential",
                })?;
            out.push(id);
            out.extend_from_slice(&finite.to_be_bytes());
            out.push(essential);
            for &(b, d) in &group.finite {
                out.push(b);
                out.push(d);
            }
            out.extend_from_slice(&group.essential);
        }
        Ok(out)
    }
}

/// Serializes an 8-bit image and its diagram.
pub fn encode_packet(
    width: usize,
    height: usize,
    payload: &[u8],
    diagram: &PersistenceDiagram,
    orientation: Orientation,
) -> Result<Vec<u8>, EncodeError> {
    let (Ok(w), Ok(h)) = (u16::try_from(width), u16::try_from(height)) else {
        return Err(EncodeError::DimensionOverflow { width, height });
    };
    Packet {
        width: w,
        height: h,
        orientation,
        payload: payload.to_vec(),
        topocode: quantize(diagram)?,
    }
    .encode()
}

struct Reader<'a> {
    bytes: &'a [u8],
    offset: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, field: &'static str) -> Result<&'a [u8], DecodeError> {
        let available = self.bytes.len() - self.offset;
        if n > available {
            return Err(DecodeError::Truncated {
                field,
                offset: self.offset,
                needed: n,
                available,
            });
        }
        let s = &self.bytes[self.offset..self.offset + n];
        self.offset += n;
        Ok(s)
    }

    fn u8(&mut self, field: &'static str) -> Result<u8, DecodeError> {
        Ok(self.take(1, field)?[0])
    }

    fn u16(&mut self, field: &'static str) -> Result<u16, DecodeError> {
        let s = self.take(2, field)?;
        Ok(u16::from_be_bytes([s[0], s[1]]))
    }
}

/// Parses a packet without interpreting the levels.
fn parse(bytes: &[u8]) -> Result<(Packet, PacketLayout), DecodeError> {
    let mut r = Reader { bytes, offset: 0 };
    if bytes.len() < MAGIC.len() {
        return Err(DecodeError::Truncated {
            field: "magic",
            offset: 0,
            needed: MAGIC.len(),
            available: bytes.len(),
        });
    }
    if r.take(4, "magic")? != MAGIC {
        return Err(DecodeError::BadMagic);
    }
    let width = r.u16("width")?;
    let height = r.u16("height")?;
    let bpp = r.u8("bits_per_pixel")?;
    if bpp != BITS_PER_PIXEL {
        return Err(DecodeError::UnsupportedBitsPerPixel { value: bpp });
    }
    let flag = r.u8("orientation")?;
    let orientation =
        Orientation::from_flag(flag).ok_or(DecodeError::BadOrientation { value: flag })?;
    let group_count = r.u8("group_count")?;
    let payload_start = r.offset;
    let payload = r
        .take(usize::from(width) * usize::from(height), "payload")?
        .to_vec();
    let payload_range = payload_start..r.offset;

    let mut topocode = QuantizedDiagram::default();
    let mut group_headers = Vec::new();
    let mut coordinates = Vec::new();
    let mut previous: Option<u8> = None;
    for _ in 0..group_count {
        let header_start = r.offset;
        let id = r.u8("group_id")?;
        if let Some(prev) = previous {
            if id <= prev {
                return Err(DecodeError::NonMonotoneGroupIds {
                    id,
                    previous: prev,
                    offset: header_start,
                });
            }
        }
        previous = Some(id);
        let finite = usize::from(r.u16("finite_count")?);
        let essential = usize::from(r.u8("essential_count")?);
        group_headers.push(header_start..r.offset);
        let coord_start = r.offset;
        let pairs = r.take(2 * finite, "finite_pairs")?;
        let births = r.take(essential, "essential_births")?;
        coordinates.push(coord_start..r.offset);
        topocode.groups.insert(
            usize::from(id),
            QuantizedGroup {
                finite: pairs.chunks_exact(2).map(|c| (c[0], c[1])).collect(),
                essential: births.to_vec(),
            },
        );
    }
    if r.offset != bytes.len() {
        return Err(DecodeError::TrailingBytes {
            offset: r.offset,
            count: bytes.len() - r.offset,
        });
    }
    let layout = PacketLayout {
        payload: payload_range,
        group_headers,
        coordinates,
        total_len: bytes.len(),
    };
    Ok((
        Packet {
            width,
            height,
            orientation,
            payload,
            topocode,
        },
        layout,
    ))
}

impl PacketLayout {
    /// Layout of a well-formed packet.
    pub fn of(bytes: &[u8]) -> Result<Self, DecodeError> {
        parse(bytes).map(|(_, layout)| layout)
    }
}

/// Parses a packet and dequantizes its Topocode.
pub fn decode_packet(bytes: &[u8]) -> Result<DecodedPacket, DecodeError> {
    let (packet, layout) = parse(bytes)?;
    let mut diagram = PersistenceDiagram::with_dims(packet.topocode.groups.keys().copied());
    let mut warnings = Vec::new();
    for ((&dim, group), coords) in packet.topocode.groups.iter().zip(&layout.coordinates) {
        for (index, &(b, d)) in group.finite.iter().enumerate() {
            if d > b {
                diagram.push_finite(dim, BirthDeath::new(dequantize_value(b), dequantize_value(d)));
            } else {
                warnings.push(DecodeWarning::DegeneratePair {
                    group: dim as u8,
                    index,
                    offset: coords.start + 2 * index,
                    birth: b,
                    death: d,
                });
            }
        }
        for &b in &group.essential {
            diagram.push_essential(dim, Essential::new(dequantize_value(b)));
        }
    }
    Ok(DecodedPacket {
        width: usize::from(packet.width),
        height: usize::from(packet.height),
        orientation: packet.orientation,
        payload: packet.payload,
        diagram,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_diagram() -> PersistenceDiagram {
        let mut d = PersistenceDiagram::with_dims([0, 1]);
        d.push_finite(0, BirthDeath::new(0.0, 0.8));
        d.push_finite(0, BirthDeath::new(0.2, 0.4));
        d.push_finite(1, BirthDeath::new(0.1, 1.0));
        d.push_essential(0, Essential::new(0.0));
        d
    }

    fn sample_packet() -> Vec<u8> {
        let payload: Vec<u8> = (0..12).collect();
        encode_packet(4, 3, &payload, &sample_diagram(), Orientation::Superlevel).unwrap()
    }

    #[test]
    fn exact_layout() {
        let bytes = sample_packet();
        let mut expected = b"TPC1".to_vec();
        expected.extend_from_slice(&[0, 4, 0, 3, 8, 1, 2]);
        expected.extend(0..12u8);
        expected.extend_from_slice(&[0, 0, 2, 1, 0, 204, 51, 102, 0]);
        expected.extend_from_slice(&[1, 0, 1, 0, 26, 255]);
        assert_eq!(bytes, expected);
    }

    #[test]
    fn round_trip() {
        let bytes = sample_packet();
        let decoded = decode_packet(&bytes).unwrap();
        assert_eq!(decoded.payload, (0..12).collect::<Vec<u8>>());
        assert_eq!(decoded.orientation, Orientation::Superlevel);
        assert_eq!(decoded.diagram.finite(0).len(), 2);
        assert!(decoded.warnings.is_empty());
        let layout = PacketLayout::of(&bytes).unwrap();
        assert_eq!(layout.payload, 11..23);
        assert_eq!(layout.coordinates, vec![27..32, 36..38]);
        assert_eq!(layout.topocode_len(), topocode_section_len(&quantize(&sample_diagram()).unwrap()));
    }

    #[test]
    fn empty_diagram_parses() {
        let d = PersistenceDiagram::with_dims([0, 1]);
        let bytes = encode_packet(2, 2, &[1, 2, 3, 4], &d, Orientation::Sublevel).unwrap();
        assert_eq!(bytes.len(), HEADER_LEN + 4 + 2 * GROUP_HEADER_LEN);
        let decoded = decode_packet(&bytes).unwrap();
        assert_eq!(decoded.diagram.finite_count(), 0);
    }

    #[test]
    fn bad_magic() {
        let mut bytes = sample_packet();
        bytes[0] ^= 0x01;
        assert_eq!(decode_packet(&bytes), Err(DecodeError::BadMagic));
    }

    #[test]
    fn payload_bit_flip_survives() {
        let mut bytes = sample_packet();
        bytes[HEADER_LEN + 5] ^= 0x10;
        let decoded = decode_packet(&bytes).unwrap();
        let diff: u32 = decoded
            .payload
            .iter()
            .zip(0..12u8)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum();
        assert_eq!(diff, 1);
    }

    #[test]
    fn degenerate_pair_is_dropped_with_warning() {
        let mut bytes = sample_packet();
        // Second H0 pair: birth 51 at offset 29, death 102 at offset 30.
        bytes[30] = 40;
        let decoded = decode_packet(&bytes).unwrap();
        assert_eq!(decoded.diagram.finite(0).len(), 1);
        assert_eq!(decoded.diagram.finite(1).len(), 1);
        assert_eq!(
            decoded.warnings,
            vec![DecodeWarning::DegeneratePair {
                group: 0,
                index: 1,
                offset: 29,
                birth: 51,
                death: 40
            }]
        );
    }

    #[test]
    fn truncation_names_the_field() {
        let bytes = sample_packet();
        let err = decode_packet(&bytes[..bytes.len() - 1]).unwrap_err();
        assert!(matches!(err, DecodeError::Truncated { field: "finite_pairs", .. }));
        let err = decode_packet(&bytes[..6]).unwrap_err();
        assert!(matches!(err, DecodeError::Truncated { field: "height", offset: 6, .. }));
    }

    #[test]
    fn group_ids_must_increase() {
        let mut bytes = sample_packet();
        bytes[32] = 0;
        assert_eq!(
            decode_packet(&bytes),
            Err(DecodeError::NonMonotoneGroupIds { id: 0, previous: 0, offset: 32 })
        );
    }

    #[test]
    fn trailing_bytes_rejected() {
        let mut bytes = sample_packet();
        bytes.push(0);
        assert!(matches!(decode_packet(&bytes), Err(DecodeError::TrailingBytes { count: 1, .. })));
    }

    #[test]
    fn oversize_image_rejected() {
        let d = PersistenceDiagram::new();
        assert!(matches!(
            encode_packet(70_000, 2, &[], &d, Orientation::Sublevel),
            Err(EncodeError::DimensionOverflow { .. })
        ));
    }
}
