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

#include "ztsim/identity.hpp"

namespace ztsim {

std::string Identity::str() const {
  return trust_domain + "/ns/" + ns + "/sa/" + service_account;
}

std::optional<Identity> Identity::parse(const std::string& text) {
  auto ns_pos = text.find("/ns/");
  if (ns_pos == std::string::npos || ns_pos == 0) return std::nullopt;
  auto sa_pos = text.find("/sa/", ns_pos + 4);
  if (sa_pos == std::string::npos) return std::nullopt;
  Identity id;
  id.trust_domain = text.substr(0, ns_pos);
  id.ns = text.substr(ns_pos + 4, sa_pos - (ns_pos + 4));
  id.service_account = text.substr(sa_pos + 4);
  if (id.ns.empty() || id.service_account.empty()) return std::nullopt;
  // Components may not themselves contain the separators.
  if (id.trust_domain.find("/ns/") != std::string::npos ||
      id.ns.find('/') != std::string::npos ||
      id.service_account.find('/') != std::string::npos) {
    return std::nullopt;
  }
  return id;
}

std::optional<Certificate> CertificateAuthority::issue(const Workload& w,
                                                       Timestamp now,
                                                       std::string* error) {
  if (!w.sidecar) {
    if (error) *error = "no-mesh-identity";
    return std::nullopt;
  }
  Certificate cert;
  cert.identity = Identity{trust_domain_, w.ns, w.service_account};
  cert.serial = next_serial_++;
  cert.not_before = now;
  cert.not_after = now + ttl_;
  cert.issuer = trust_domain_;
  return cert;
}

std::string to_string(PeerAuthMode mode) {
  switch (mode) {
    case PeerAuthMode::kStrict: return "STRICT";
    case PeerAuthMode::kPermissive: return "PERMISSIVE";
    case PeerAuthMode::kDisable: return "DISABLE";
  }
  return "PERMISSIVE";
}

std::optional<PeerAuthMode> peer_auth_mode_from_string(const std::string& s) {
  if (s == "STRICT") return PeerAuthMode::kStrict;
  if (s == "PERMISSIVE") return PeerAuthMode::kPermissive;
  if (s == "DISABLE") return PeerAuthMode::kDisable;
  return std::nullopt;
}

std::string to_string(HandshakeReason reason) {
  switch (reason) {
    case HandshakeReason::kOk: return "ok";
    case HandshakeReason::kServerRequiresMtls: return "server_requires_mtls";
    case HandshakeReason::kClientCertInvalid: return "client_cert_invalid";
    case HandshakeReason::kTrustDomainMismatch: return "trust_domain_mismatch";
  }
  return "ok";
}

HandshakeOutcome handshake(const std::optional<Certificate>& client_cert,
                           const std::string& server_trust_domain,
                           PeerAuthMode effective_mode, Timestamp now) {
  if (effective_mode == PeerAuthMode::kDisable) {
    return {Channel::kPlaintext, std::nullopt, HandshakeReason::kOk};
  }
  if (client_cert) {
    const bool valid = client_cert->valid_at(now);
    const bool domain_ok = client_cert->issuer == server_trust_domain;
    if (valid && domain_ok) {
      return {Channel::kMtls, client_cert->identity, HandshakeReason::kOk};
    }
    if (effective_mode == PeerAuthMode::kStrict) {
      return {Channel::kRejected, std::nullopt,
              domain_ok ? HandshakeReason::kClientCertInvalid
                        : HandshakeReason::kTrustDomainMismatch};
    }
    // Unusable certificate under PERMISSIVE falls back to plaintext.
    return {Channel::kPlaintext, std::nullopt, HandshakeReason::kOk};
  }
  if (effective_mode == PeerAuthMode::kStrict) {
    return {Channel::kRejected, std::nullopt,
            HandshakeReason::kServerRequiresMtls};
  }
  return {Channel::kPlaintext, std::nullopt, HandshakeReason::kOk};
}

}  // namespace ztsim
