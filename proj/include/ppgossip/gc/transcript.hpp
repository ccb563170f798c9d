#pragma once

#include <cstdint>
#include <vector>

#include "ppgossip/bytes.hpp"
#include "ppgossip/gc/garble.hpp"

namespace ppg::gc {

enum class Party : std::uint8_t { garbler, evaluator };

enum class RecordKind : std::uint8_t {
  ot_correction,    ///< evaluator -> garbler, 1 bit per evaluator input bit
  ot_transfer,      ///< garbler -> evaluator, 2t bits per evaluator input bit
  garbler_labels,   ///< garbler's own input labels, t bits each
  garbled_tables,   ///< 3t bits per AND gate
  output_decode,    ///< decode bit of the evaluator's output wire
  result_delivery,  ///< evaluator returns the garbler's output label
};

const char* to_string(RecordKind k);

struct TranscriptRecord {
  unsigned round = 0;
  Party from = Party::garbler;
  RecordKind kind = RecordKind::garbled_tables;
  std::size_t bits = 0;  ///< exact payload length in bits
  Bytes payload;         ///< bit-packed, ceil(bits / 8) bytes
};

/// Packs labels and bits LSB-first without padding between items.
class BitPacker {
 public:
  void put_bit(bool b);
  void put_label(const Label& l, unsigned t);
  std::size_t bits() const { return bits_; }
  Bytes take() { return std::move(buf_); }

 private:
  Bytes buf_;
  std::size_t bits_ = 0;
};

class BitUnpacker {
 public:
  explicit BitUnpacker(std::span<const std::uint8_t> in) : in_(in) {}
  bool get_bit();
  Label get_label(unsigned t);

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

/// Ordered message log of one final step.
class Transcript {
 public:
  void add(unsigned round, Party from, RecordKind kind, BitPacker&& p);

  const std::vector<TranscriptRecord>& records() const { return records_; }
  std::size_t bits(RecordKind kind) const;
  std::size_t total_bits() const;
  /// Distinct round numbers among records of the given kinds (all kinds when empty).
  unsigned rounds(const std::vector<RecordKind>& kinds = {}) const;

  /// Length-prefixed records: u8 round, u8 party, u8 kind, varint bits, payload.
  Bytes serialize() const;
  static Transcript deserialize(std::span<const std::uint8_t> in);

 private:
  std::vector<TranscriptRecord> records_;
};

}  // namespace ppg::gc
