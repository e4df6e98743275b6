#include "vocleap/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vocleap/porter.hpp"

namespace vocleap {

TermId Vocabulary::intern(const std::string& term) {
  auto it = ids_.find(term);
  if (it != ids_.end()) return it->second;
  const TermId id = static_cast<TermId>(terms_.size());
  terms_.push_back(term);
  ids_.emplace(term, id);
  return id;
}

std::optional<TermId> Vocabulary::lookup(const std::string& term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::term(TermId id) const {
  if (id >= terms_.size()) throw std::out_of_range("unknown term id " + std::to_string(id));
  return terms_[id];
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (const char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc) && uc < 0x80) {
      current.push_back(static_cast<char>(std::tolower(uc)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::optional<std::string> normalize_term(const std::string& token, const Stopwords& stopwords) {
  if (stopwords.contains(token)) return std::nullopt;
  // Iterate to a fixpoint: a handful of -e endings restem shorter, and the
  // vocabulary must be stable under renormalization.
  std::string stem = porter_stem(token);
  for (int i = 0; i < 8; ++i) {
    std::string again = porter_stem(stem);
    if (again == stem) break;
    stem = std::move(again);
  }
  // a stem that collides with a stopword would be filtered on renormalization,
  // so filter the token producing it as well
  if (stopwords.contains(stem)) return std::nullopt;
  if (stem.size() < 2) return std::nullopt;
  return stem;
}

namespace {

bool valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto b = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    if (b < 0x80) {
      len = 1;
    } else if ((b & 0xE0) == 0xC0 && b >= 0xC2) {
      len = 2;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
    } else if ((b & 0xF8) == 0xF0 && b <= 0xF4) {
      len = 4;
    } else {
      return false;
    }
    if (i + len > bytes.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(bytes[i + k]) & 0xC0) != 0x80) return false;
    }
    // reject overlong encodings and surrogates
    if (len == 3) {
      const auto b1 = static_cast<unsigned char>(bytes[i + 1]);
      if (b == 0xE0 && b1 < 0xA0) return false;
      if (b == 0xED && b1 >= 0xA0) return false;
    }
    if (len == 4) {
      const auto b1 = static_cast<unsigned char>(bytes[i + 1]);
      if (b == 0xF0 && b1 < 0x90) return false;
      if (b == 0xF4 && b1 >= 0x90) return false;
    }
    i += len;
  }
  return true;
}

TermCounts count_terms(std::string_view text, Vocabulary& vocab, const Stopwords& stopwords) {
  TermCounts counts;
  for (const auto& token : tokenize(text)) {
    if (auto term = normalize_term(token, stopwords)) {
      ++counts[vocab.intern(*term)];
    }
  }
  return counts;
}

std::int64_t total_count(const TermCounts& counts) {
  std::int64_t total = 0;
  for (const auto& [_, c] : counts) total += c;
  return total;
}

}  // namespace

CorpusLoadResult load_corpus(const std::filesystem::path& dir, const Stopwords& stopwords) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec) || ec) {
    throw std::runtime_error("corpus directory unreadable: " + dir.string());
  }

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  // canonical order so term ids depend only on file names
  std::sort(files.begin(), files.end());

  CorpusLoadResult result;
  if (files.empty()) {
    result.report.warnings.push_back("no .txt files in " + dir.string());
    return result;
  }

  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      result.report.skipped_files.push_back(file.filename().string());
      result.report.warnings.push_back("cannot open " + file.filename().string() + ", skipped");
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (!valid_utf8(text)) {
      result.report.skipped_files.push_back(file.filename().string());
      result.report.warnings.push_back("invalid UTF-8 in " + file.filename().string() +
                                       ", skipped");
      continue;
    }
    Document doc;
    doc.doc_id = file.stem().string();
    doc.term_freqs = count_terms(text, result.corpus.vocab, stopwords);
    doc.length = total_count(doc.term_freqs);
    if (doc.term_freqs.empty()) {
      result.report.empty_documents.push_back(doc.doc_id);
      result.report.warnings.push_back("document " + doc.doc_id + " normalized to zero terms");
    }
    result.corpus.documents.push_back(std::move(doc));
  }
  return result;
}

TopicSpec load_topic(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open topic file: " + file.string());

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("topic file " + file.string() + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw std::runtime_error("topic file " + file.string() + ": top-level value must be an object");
  }

  TopicSpec topic;
  const auto require_string = [&](const char* field) -> std::string {
    if (!doc.contains(field)) {
      throw std::runtime_error("topic file " + file.string() + ": missing field \"" + field + "\"");
    }
    if (!doc[field].is_string()) {
      throw std::runtime_error("topic file " + file.string() + ": field \"" + field +
                               "\" must be a string");
    }
    return doc[field].get<std::string>();
  };
  topic.topic_id = require_string("topic_id");
  topic.description_text = require_string("description");
  if (topic.description_text.empty()) {
    throw std::runtime_error("topic file " + file.string() + ": field \"description\" is empty");
  }
  if (doc.contains("relevant")) {
    if (!doc["relevant"].is_array()) {
      throw std::runtime_error("topic file " + file.string() +
                               ": field \"relevant\" must be an array of strings");
    }
    for (const auto& entry : doc["relevant"]) {
      if (!entry.is_string()) {
        throw std::runtime_error("topic file " + file.string() +
                                 ": field \"relevant\" must contain only strings");
      }
      topic.relevant_doc_ids.insert(entry.get<std::string>());
    }
  }
  return topic;
}

VectorizeResult vectorize(std::string_view text, Vocabulary& vocab, bool allow_new_terms,
                          const Stopwords& stopwords) {
  VectorizeResult result;
  for (const auto& token : tokenize(text)) {
    auto term = normalize_term(token, stopwords);
    if (!term) continue;
    if (allow_new_terms) {
      ++result.counts[vocab.intern(*term)];
    } else if (auto id = vocab.lookup(*term)) {
      ++result.counts[*id];
    } else {
      ++result.dropped_terms;
    }
  }
  return result;
}

Stopwords load_stopwords(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open stopword file: " + file.string());
  Stopwords words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) words.insert(line);
  }
  return words;
}

}  // namespace vocleap
