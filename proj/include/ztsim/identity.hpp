// Copyright 2026 The ztnetsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Simulated workload identities and certificates, and the transport
// handshake outcome between two endpoints. Certificates carry no real key
// material; a certificate is a validity-checked assertion.

#ifndef ZTSIM_IDENTITY_HPP
#define ZTSIM_IDENTITY_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "ztsim/topology.hpp"

namespace ztsim {

using Timestamp = int64_t;  // seconds since the Unix epoch

constexpr Timestamp kDefaultCertTtl = 24 * 60 * 60;

struct Identity {
  std::string trust_domain;
  std::string ns;
  std::string service_account;

  bool operator==(const Identity&) const = default;

  // "<trust_domain>/ns/<namespace>/sa/<service_account>"
  std::string str() const;
  static std::optional<Identity> parse(const std::string& text);
};

struct Certificate {
  Identity identity;
  uint64_t serial = 0;
  Timestamp not_before = 0;
  Timestamp not_after = 0;
  std::string issuer;  // trust domain

  bool valid_at(Timestamp now) const {
    return not_before <= now && now < not_after;
  }
};

// Single-writer serial counter; issued serials are strictly increasing.
class CertificateAuthority {
 public:
  explicit CertificateAuthority(std::string trust_domain,
                                Timestamp ttl = kDefaultCertTtl)
      : trust_domain_(std::move(trust_domain)), ttl_(ttl) {}

  const std::string& trust_domain() const { return trust_domain_; }

  // Fails with "no-mesh-identity" for workloads outside the mesh.
  std::optional<Certificate> issue(const Workload& w, Timestamp now,
                                   std::string* error = nullptr);

 private:
  std::string trust_domain_;
  Timestamp ttl_;
  uint64_t next_serial_ = 1;
};

enum class PeerAuthMode { kStrict, kPermissive, kDisable };

std::string to_string(PeerAuthMode mode);
std::optional<PeerAuthMode> peer_auth_mode_from_string(const std::string& s);

enum class Channel { kMtls, kPlaintext, kRejected };

enum class HandshakeReason {
  kOk,
  kServerRequiresMtls,
  kClientCertInvalid,
  kTrustDomainMismatch,
};

std::string to_string(HandshakeReason reason);

struct HandshakeOutcome {
  Channel channel = Channel::kPlaintext;
  std::optional<Identity> peer_identity;  // present iff channel == kMtls
  HandshakeReason reason = HandshakeReason::kOk;
};

// Transport handshake under an already-resolved peer-auth mode.
// server_trust_domain is the domain the server accepts peers from.
HandshakeOutcome handshake(const std::optional<Certificate>& client_cert,
                           const std::string& server_trust_domain,
                           PeerAuthMode effective_mode, Timestamp now);

}  // namespace ztsim

#endif  // ZTSIM_IDENTITY_HPP
