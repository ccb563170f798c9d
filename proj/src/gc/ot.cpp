#include "ppgossip/gc/ot.hpp"

namespace ppg::gc {

const OtSenderRecord& OtSenderPool::take(std::size_t index) {
  if (index >= records_.size()) throw OtError("ot: precomputation pool exhausted");
  OtSenderRecord& r = records_[index];
  if (r.consumed) throw OtError("ot: record already consumed");
  r.consumed = true;
  if (index >= next_) next_ = index + 1;
  return r;
}

std::pair<Label, Label> OtSenderPool::respond(bool e, const std::pair<Label, Label>& labels) {
  const OtSenderRecord& r = take(next_);
  return e ? std::pair{labels.first ^ r.m1, labels.second ^ r.m0}
           : std::pair{labels.first ^ r.m0, labels.second ^ r.m1};
}

const OtReceiverRecord& OtReceiverPool::take(std::size_t index) {
  if (index >= records_.size()) throw OtError("ot: precomputation pool exhausted");
  OtReceiverRecord& r = records_[index];
  if (r.consumed) throw OtError("ot: record already consumed");
  r.consumed = true;
  if (index >= next_) next_ = index + 1;
  return r;
}

bool OtReceiverPool::correct(bool choice) {
  const OtReceiverRecord& r = take(next_);
  pending_.push_back({choice, r.mc});
  return choice != r.c;
}

Label OtReceiverPool::finish(const std::pair<Label, Label>& reply) {
  if (finished_ >= pending_.size()) throw OtError("ot: reply without a pending correction");
  const Pending& p = pending_[finished_++];
  return (p.choice ? reply.second : reply.first) ^ p.mc;
}

OtPrecomputation ot_precompute(std::size_t count, unsigned t, Rng& dealer) {
  std::vector<OtSenderRecord> s;
  std::vector<OtReceiverRecord> r;
  s.reserve(count);
  r.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    OtSenderRecord sr{Label::random(t, dealer), Label::random(t, dealer)};
    const bool c = dealer.next_bit();
    r.push_back({c, c ? sr.m1 : sr.m0});
    s.push_back(std::move(sr));
  }
  return {OtSenderPool(std::move(s)), OtReceiverPool(std::move(r))};
}

std::vector<Label> ot_online(OtPrecomputation& pre, const std::vector<bool>& choices,
                             const std::vector<std::pair<Label, Label>>& labels, unsigned t, OtOnlineStats* stats) {
  if (choices.size() != labels.size()) throw std::invalid_argument("ot: choice/label count mismatch");
  if (pre.receiver.remaining() < choices.size() || pre.sender.remaining() < choices.size())
    throw OtError("ot: precomputation pool exhausted");
  std::vector<bool> corrections;
  for (bool b : choices) corrections.push_back(pre.receiver.correct(b));
  std::vector<Label> out;
  for (std::size_t i = 0; i < choices.size(); ++i) out.push_back(pre.receiver.finish(pre.sender.respond(corrections[i], labels[i])));
  if (stats != nullptr) {
    stats->correction_bits += choices.size();
    stats->transfer_bits += 2 * t * choices.size();
  }
  return out;
}

}  // namespace ppg::gc
