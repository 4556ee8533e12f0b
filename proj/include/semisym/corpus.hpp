#pragma once

#include <string_view>
#include <vector>

namespace semisym {

struct CorpusEntry {
  std::string_view name;
  std::string_view text;
};

/// Metric files compiled into the library, sorted by name.
const std::vector<CorpusEntry>& builtin_corpus();
/// nullptr when unknown.
const CorpusEntry* find_corpus_entry(std::string_view name);

}  // namespace semisym
