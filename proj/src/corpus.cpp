#include "lmst/corpus.hpp"

#include <fstream>
#include <sstream>

namespace lmst {

std::vector<CorpusLine> load_corpus(std::istream& in, const DefinitionTable& defs) {
  std::vector<CorpusLine> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    size_t last = line.find_last_not_of(" \t\r");
    std::string text = line.substr(first, last - first + 1);
    try {
      Formula f = parse(text, defs);
      out.push_back(CorpusLine{lineno, std::move(text), std::move(f)});
    } catch (const parse_error& e) {
      throw parse_error(std::string("line ") + std::to_string(lineno) + ": " + e.what(), lineno, e.col);
    }
  }
  return out;
}

std::vector<CorpusLine> load_corpus_file(const std::string& path, const DefinitionTable& defs) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open corpus file: " + path, 0, 0);
  return load_corpus(in, defs);
}

std::vector<Formula> corpus_formulas(const std::vector<CorpusLine>& corpus) {
  std::vector<Formula> out;
  out.reserve(corpus.size());
  for (const CorpusLine& c : corpus) out.push_back(c.formula);
  return out;
}

}  // namespace lmst
