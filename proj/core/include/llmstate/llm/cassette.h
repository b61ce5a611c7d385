#pragma once

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llmstate/llm/chat.h"

namespace llmstate::llm {

struct CassetteEntry {
  std::string role;
  std::size_t index = 0;
  std::string key;  // canonical_digest of the request; may be empty when authored by hand
  std::string response;

  friend bool operator==(const CassetteEntry&, const CassetteEntry&) = default;
};

// A request/response log for one episode. File layout:
//
//   {"format": "llmstate-cassette", "version": 1,
//    "index_fallback": false,
//    "entries": [{"role": "policy", "index": 0, "key": "<sha256>",
//                 "response": "..."}]}
//
// Lookups match on the digest first. When index_fallback is true, a request
// whose digest is absent is matched on (role, index) instead.
class Cassette {
 public:
  Cassette() = default;

  static Cassette parse(std::string_view document);
  static Cassette load(const std::filesystem::path& path);  // ConfigError if unreadable
  std::string serialize() const;
  void save(const std::filesystem::path& path) const;

  std::optional<std::string> lookup(std::string_view key, const CallContext& context) const;

  bool index_fallback = false;
  std::vector<CassetteEntry> entries;
};

enum class CassetteMode {
  kReplay,       // every lookup must hit
  kRecord,       // every call goes to the inner backend and is appended
  kPassthrough,  // hits are served from the cassette, misses recorded
};

std::string_view to_string(CassetteMode mode);

class CassetteBackend : public Backend {
 public:
  // Replay backend. It has no transport at all.
  explicit CassetteBackend(Cassette cassette);
  // Record or passthrough; the cassette is written to save_path after every
  // appended entry when save_path is non-empty.
  CassetteBackend(CassetteMode mode, Cassette cassette, Backend& inner,
                  std::filesystem::path save_path = {});

  std::string complete(const ChatRequest& request, const CallContext& context) override;

  CassetteMode mode() const { return mode_; }
  bool has_transport() const { return inner_ != nullptr; }
  Cassette snapshot() const;

 private:
  CassetteMode mode_;
  Backend* inner_ = nullptr;
  std::filesystem::path save_path_;
  mutable std::mutex mu_;
  Cassette cassette_;
};

}  // namespace llmstate::llm
