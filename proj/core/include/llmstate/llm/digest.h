#pragma once

#include <string>
#include <string_view>

#include "llmstate/llm/chat.h"

namespace llmstate::llm {

// CRLF and lone CR become LF; trailing LFs are removed.
std::string normalize_text(std::string_view text);

// The byte string that canonical_digest hashes. Fields are length-prefixed
// so that no two distinct requests share an encoding. max_output is not part
// of the identity.
std::string canonical_encoding(const ChatRequest& request);

// Lowercase hex SHA-256 of canonical_encoding(request).
std::string canonical_digest(const ChatRequest& request);

// Lowercase hex SHA-256 of arbitrary bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace llmstate::llm
