#include "ppgossip/gc/transcript.hpp"

#include <algorithm>
#include <set>

namespace ppg::gc {

const char* to_string(RecordKind k) {
  switch (k) {
    case RecordKind::ot_correction: return "ot_correction";
    case RecordKind::ot_transfer: return "ot_transfer";
    case RecordKind::garbler_labels: return "garbler_labels";
    case RecordKind::garbled_tables: return "garbled_tables";
    case RecordKind::output_decode: return "output_decode";
    case RecordKind::result_delivery: return "result_delivery";
  }
  return "unknown";
}

void BitPacker::put_bit(bool b) {
  if (bits_ % 8 == 0) buf_.push_back(0);
  if (b) buf_.back() |= static_cast<std::uint8_t>(1u << (bits_ % 8));
  ++bits_;
}

void BitPacker::put_label(const Label& l, unsigned t) {
  for (unsigned i = 0; i < t; ++i) put_bit(l.bit(i));
}

bool BitUnpacker::get_bit() {
  if (pos_ / 8 >= in_.size()) throw DecodeError("bit stream truncated");
  const bool b = ((in_[pos_ / 8] >> (pos_ % 8)) & 1) != 0;
  ++pos_;
  return b;
}

Label BitUnpacker::get_label(unsigned t) {
  Label l;
  for (unsigned i = 0; i < t; ++i) l.set_bit(i, get_bit());
  return l;
}

void Transcript::add(unsigned round, Party from, RecordKind kind, BitPacker&& p) {
  TranscriptRecord r;
  r.round = round;
  r.from = from;
  r.kind = kind;
  r.bits = p.bits();
  r.payload = p.take();
  records_.push_back(std::move(r));
}

std::size_t Transcript::bits(RecordKind kind) const {
  std::size_t n = 0;
  for (const auto& r : records_)
    if (r.kind == kind) n += r.bits;
  return n;
}

std::size_t Transcript::total_bits() const {
  std::size_t n = 0;
  for (const auto& r : records_) n += r.bits;
  return n;
}

unsigned Transcript::rounds(const std::vector<RecordKind>& kinds) const {
  std::set<unsigned> seen;
  for (const auto& r : records_)
    if (kinds.empty() || std::find(kinds.begin(), kinds.end(), r.kind) != kinds.end()) seen.insert(r.round);
  return static_cast<unsigned>(seen.size());
}

Bytes Transcript::serialize() const {
  ByteWriter w;
  w.put_varint(records_.size());
  for (const auto& r : records_) {
    w.put_u8(static_cast<std::uint8_t>(r.round));
    w.put_u8(static_cast<std::uint8_t>(r.from));
    w.put_u8(static_cast<std::uint8_t>(r.kind));
    w.put_varint(r.bits);
    w.put_bytes(r.payload);
  }
  return w.take();
}

Transcript Transcript::deserialize(std::span<const std::uint8_t> in) {
  ByteReader rd(in);
  Transcript tr;
  const std::uint64_t n = rd.get_varint();
  for (std::uint64_t i = 0; i < n; ++i) {
    TranscriptRecord r;
    r.round = rd.get_u8();
    const std::uint8_t party = rd.get_u8();
    const std::uint8_t kind = rd.get_u8();
    if (party > 1 || kind > static_cast<std::uint8_t>(RecordKind::result_delivery))
      throw DecodeError("transcript: bad record header");
    r.from = static_cast<Party>(party);
    r.kind = static_cast<RecordKind>(kind);
    r.bits = rd.get_varint();
    const auto body = rd.get_bytes(bytes_for_bits(r.bits));
    r.payload.assign(body.begin(), body.end());
    tr.records_.push_back(std::move(r));
  }
  rd.expect_done();
  return tr;
}

}  // namespace ppg::gc
