#pragma once

#include "knotty/error.hpp"
#include "knotty/invariants.hpp"
#include "knotty/serialization.hpp"

#include <httplib.h>

#include <memory>
#include <string>
#include <string_view>

namespace knotty {

/// Forwards evaluation to a server speaking `POST /jones`. The reply is
/// trusted as-is; comparing it against a local backend is the caller's job.
class RemoteOracle final : public JonesOracle {
public:
  /// `endpoint` is `http://host:port` with an optional path; the path
  /// defaults to /jones.
  explicit RemoteOracle(std::string endpoint, int timeout_seconds = 30)
      : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {
    const auto scheme = endpoint_.find("://");
    if (scheme == std::string::npos)
      fail(ErrorKind::InvalidConfig, "oracle endpoint needs a scheme: " + endpoint_);
    const auto slash = endpoint_.find('/', scheme + 3);
    base_ = endpoint_.substr(0, slash);
    path_ = slash == std::string::npos ? "/jones" : endpoint_.substr(slash);
  }

  LaurentPoly evaluate(const Diagram &d) const override {
    // A fresh client per call keeps the oracle safe to share between threads.
    httplib::Client client(base_);
    client.set_connection_timeout(timeout_seconds_, 0);
    client.set_read_timeout(timeout_seconds_, 0);
    client.set_write_timeout(timeout_seconds_, 0);
    auto res = client.Post(path_, diagram_to_json(d).dump(), "application/json");
    if (!res)
      fail(ErrorKind::Transport, "POST " + endpoint_ + path_suffix() + ": " + httplib::to_string(res.error()));
    if (res->status != 200)
      fail(ErrorKind::Transport, "POST " + endpoint_ + path_suffix() + " returned HTTP " + std::to_string(res->status));
    const Json body = Json::parse(res->body, nullptr, false);
    if (body.is_discarded())
      fail(ErrorKind::Protocol, "oracle reply is not JSON");
    try {
      LaurentPoly p = poly_from_json(body);
      if (p.variable() != Variable::T)
        fail(ErrorKind::Protocol, "oracle replied with a polynomial in A, expected t");
      return p;
    } catch (const Error &e) {
      if (e.kind() == ErrorKind::Protocol)
        throw;
      fail(ErrorKind::Protocol, std::string("malformed oracle reply: ") + e.what());
    }
  }

  std::string descriptor() const override { return "remote:" + endpoint_; }

private:
  std::string path_suffix() const { return endpoint_.size() > base_.size() ? "" : path_; }

  std::string endpoint_;
  std::string base_;
  std::string path_;
  int timeout_seconds_;
};

/// Builds a backend from its descriptor: "state-sum", "contraction" or
/// "remote:<url>".
inline std::unique_ptr<JonesOracle> make_oracle(std::string_view descriptor, StateSumBudget budget = {}) {
  if (descriptor.empty() || descriptor == "state-sum")
    return std::make_unique<StateSumOracle>(budget);
  if (descriptor == "contraction")
    return std::make_unique<ContractionOracle>();
  if (descriptor.starts_with("remote:"))
    return std::make_unique<RemoteOracle>(std::string(descriptor.substr(7)));
  fail(ErrorKind::InvalidConfig, "unknown oracle \"" + std::string(descriptor) + "\"");
}

} // namespace knotty
