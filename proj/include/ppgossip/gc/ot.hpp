#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppgossip/gc/garble.hpp"

namespace ppg::gc {

class OtError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random-OT correlation held by the sender: two random pads.
struct OtSenderRecord {
  Label m0, m1;
  bool consumed = false;
};

/// Receiver side of the same correlation: a random choice c and pad m_c.
struct OtReceiverRecord {
  bool c = false;
  Label mc;
  bool consumed = false;
};

/// Sender's precomputed pool. Records are consumed in order.
class OtSenderPool {
 public:
  explicit OtSenderPool(std::vector<OtSenderRecord> r) : records_(std::move(r)) {}
  /// Marks record `index` consumed; throws OtError if it already was.
  const OtSenderRecord& take(std::size_t index);
  std::size_t next() const { return next_; }
  std::size_t remaining() const { return records_.size() - next_; }

  /// Online reply for one transfer: (x0 ^ m_e, x1 ^ m_{1^e}).
  std::pair<Label, Label> respond(bool e, const std::pair<Label, Label>& labels);

 private:
  std::vector<OtSenderRecord> records_;
  std::size_t next_ = 0;
};

class OtReceiverPool {
 public:
  explicit OtReceiverPool(std::vector<OtReceiverRecord> r) : records_(std::move(r)) {}
  const OtReceiverRecord& take(std::size_t index);
  std::size_t remaining() const { return records_.size() - next_; }

  /// Correction bit e = b ^ c for the next record; remembers the record for finish().
  bool correct(bool choice);
  /// Unmasks the chosen label from the sender's reply to the oldest pending correction.
  Label finish(const std::pair<Label, Label>& reply);

 private:
  struct Pending {
    bool choice;
    Label mc;
  };
  std::vector<OtReceiverRecord> records_;
  std::size_t next_ = 0;
  std::vector<Pending> pending_;
  std::size_t finished_ = 0;
};

/// Offline phase, simulated by a trusted dealer.
struct OtPrecomputation {
  OtSenderPool sender;
  OtReceiverPool receiver;
};

OtPrecomputation ot_precompute(std::size_t count, unsigned t, Rng& dealer);

/// Bit counts of one online run.
struct OtOnlineStats {
  std::size_t correction_bits = 0;  ///< receiver -> sender
  std::size_t transfer_bits = 0;    ///< sender -> receiver
};

/// Full online phase: the receiver learns labels[i].second when choices[i]
/// is set and labels[i].first otherwise. Throws OtError when the pool is exhausted.
std::vector<Label> ot_online(OtPrecomputation& pre, const std::vector<bool>& choices,
                             const std::vector<std::pair<Label, Label>>& labels, unsigned t,
                             OtOnlineStats* stats = nullptr);

}  // namespace ppg::gc
