#pragma once

#include <string>
#include <vector>

#include "vocleap/corpus.hpp"

namespace testsupport {

// Three docs over three terms: d0=(2,1,0), d1=(0,3,4), d2=(1,0,1).
inline vocleap::Corpus fixture_f1() {
  vocleap::Corpus corpus;
  corpus.vocab.intern("t0");
  corpus.vocab.intern("t1");
  corpus.vocab.intern("t2");
  const auto add = [&](const std::string& id, std::vector<int> counts) {
    vocleap::Document doc;
    doc.doc_id = id;
    for (vocleap::TermId t = 0; t < counts.size(); ++t) {
      if (counts[t] > 0) {
        doc.term_freqs[t] = counts[t];
        doc.length += counts[t];
      }
    }
    corpus.documents.push_back(std::move(doc));
  };
  add("d0", {2, 1, 0});
  add("d1", {0, 3, 4});
  add("d2", {1, 0, 1});
  return corpus;
}

}  // namespace testsupport
