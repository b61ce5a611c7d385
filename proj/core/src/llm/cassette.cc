#include "llmstate/llm/cassette.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "llmstate/llm/digest.h"

namespace llmstate::llm {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kFormat = "llmstate-cassette";

}  // namespace

std::string_view to_string(CassetteMode mode) {
  switch (mode) {
    case CassetteMode::kReplay: return "replay";
    case CassetteMode::kRecord: return "record";
    case CassetteMode::kPassthrough: return "passthrough";
  }
  return "?";
}

Cassette Cassette::parse(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("cassette is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", std::string{}) != kFormat) {
      throw ConfigError("cassette format must be \"llmstate-cassette\"");
    }
    if (doc.value("version", 0) != 1) throw ConfigError("unsupported cassette version");
    Cassette cassette;
    cassette.index_fallback = doc.value("index_fallback", false);
    for (const auto& e : doc.at("entries")) {
      CassetteEntry entry;
      entry.role = e.at("role").get<std::string>();
      entry.index = e.at("index").get<std::size_t>();
      entry.key = e.value("key", std::string{});
      entry.response = e.at("response").get<std::string>();
      cassette.entries.push_back(std::move(entry));
    }
    return cassette;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed cassette: ") + e.what());
  }
}

Cassette Cassette::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open cassette file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string Cassette::serialize() const {
  ordered_json doc;
  doc["format"] = kFormat;
  doc["version"] = 1;
  doc["index_fallback"] = index_fallback;
  doc["entries"] = ordered_json::array();
  for (const auto& entry : entries) {
    ordered_json e;
    e["role"] = entry.role;
    e["index"] = entry.index;
    if (!entry.key.empty()) e["key"] = entry.key;
    e["response"] = entry.response;
    doc["entries"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

void Cassette::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write cassette file: " + path.string());
  out << serialize();
}

std::optional<std::string> Cassette::lookup(std::string_view key, const CallContext& context) const {
  const CassetteEntry* by_key = nullptr;
  for (const auto& entry : entries) {
    if (entry.key.empty() || entry.key != key) continue;
    // A prompt can repeat within an episode; prefer the entry recorded at
    // the same position.
    if (entry.role == context.role && entry.index == context.index) return entry.response;
    if (by_key == nullptr) by_key = &entry;
  }
  if (by_key != nullptr) return by_key->response;
  if (index_fallback) {
    for (const auto& entry : entries) {
      if (entry.role == context.role && entry.index == context.index) return entry.response;
    }
  }
  return std::nullopt;
}

CassetteBackend::CassetteBackend(Cassette cassette)
    : mode_(CassetteMode::kReplay), cassette_(std::move(cassette)) {}

CassetteBackend::CassetteBackend(CassetteMode mode, Cassette cassette, Backend& inner,
                                 std::filesystem::path save_path)
    : mode_(mode), inner_(&inner), save_path_(std::move(save_path)), cassette_(std::move(cassette)) {
  if (mode == CassetteMode::kReplay) inner_ = nullptr;
}

std::string CassetteBackend::complete(const ChatRequest& request, const CallContext& context) {
  request.validate();
  const auto key = canonical_digest(request);
  if (mode_ != CassetteMode::kRecord) {
    std::lock_guard lock(mu_);
    if (auto hit = cassette_.lookup(key, context)) return *hit;
    if (inner_ == nullptr) {
      throw CassetteMiss("no cassette entry for " + context.role + " call " +
                         std::to_string(context.index) + " (digest " + key.substr(0, 12) + ")");
    }
  }
  auto response = inner_->complete(request, context);
  std::lock_guard lock(mu_);
  cassette_.entries.push_back({context.role, context.index, key, response});
  if (!save_path_.empty()) cassette_.save(save_path_);
  return response;
}

Cassette CassetteBackend::snapshot() const {
  std::lock_guard lock(mu_);
  return cassette_;
}

}  // namespace llmstate::llm
