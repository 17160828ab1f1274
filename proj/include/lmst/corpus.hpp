#pragma once

#include <iosfwd>

#include "lmst/formula.hpp"

namespace lmst {

struct CorpusLine {
  int line = 0;  // 1-based line number in the source file
  std::string text;
  Formula formula;
};

/// One formula per line; blank lines and lines starting with '#' are
/// skipped. Parse failures carry the file line number.
std::vector<CorpusLine> load_corpus(std::istream& in, const DefinitionTable& defs = DefinitionTable::standard());
std::vector<CorpusLine> load_corpus_file(const std::string& path, const DefinitionTable& defs = DefinitionTable::standard());

std::vector<Formula> corpus_formulas(const std::vector<CorpusLine>& corpus);

}  // namespace lmst
