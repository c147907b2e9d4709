// Copyright 2026 The acenlp Authors.
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

#include "acenlp/matrix.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "acenlp/errors.h"
#include "acenlp/text.h"

namespace acenlp {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<MatrixEntry> entries)
    : rows_(rows), cols_(cols) {
  for (const MatrixEntry &e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw ValidationError("matrix entry (" + std::to_string(e.row) + ", " +
                            std::to_string(e.col) + ") outside " +
                            std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const MatrixEntry &a, const MatrixEntry &b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  for (const MatrixEntry &e : entries) {
    if (!entries_.empty() && entries_.back().row == e.row &&
        entries_.back().col == e.col) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(e);
    }
  }
  std::erase_if(entries_, [](const MatrixEntry &e) { return e.value == 0; });

  row_offsets_.assign(rows_ + 1, 0);
  for (const MatrixEntry &e : entries_) ++row_offsets_[e.row + 1];
  for (std::size_t r = 0; r < rows_; ++r) row_offsets_[r + 1] += row_offsets_[r];
}

std::span<const MatrixEntry> SparseMatrix::Row(std::size_t r) const {
  if (r >= rows_) throw ValidationError("row " + std::to_string(r) + " out of range");
  return std::span<const MatrixEntry>(entries_).subspan(
      row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]);
}

std::int64_t SparseMatrix::At(std::size_t r, std::size_t c) const {
  if (c >= cols_) throw ValidationError("column " + std::to_string(c) + " out of range");
  auto row = Row(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const MatrixEntry &e, std::size_t col) { return e.col < col; });
  return it != row.end() && it->col == c ? it->value : 0;
}

void WriteSparseMatrix(std::ostream &out, const SparseMatrix &matrix) {
  out << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nnz() << '\n';
  for (const MatrixEntry &e : matrix.entries()) {
    out << e.row << ' ' << e.col << ' ' << e.value << '\n';
  }
}

SparseMatrix ReadSparseMatrix(std::istream &in, const std::string &source) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!Trim(line).empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(source, 1, "missing matrix header");
  std::size_t rows, cols, nnz;
  {
    std::istringstream header(line);
    if (!(header >> rows >> cols >> nnz)) {
      throw ParseError(source, line_no, "bad header, expected 'rows cols nnz'");
    }
  }
  std::vector<MatrixEntry> entries;
  entries.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!next_line()) throw ParseError(source, line_no, "fewer triplets than nnz");
    std::istringstream row(line);
    MatrixEntry e;
    if (!(row >> e.row >> e.col >> e.value)) {
      throw ParseError(source, line_no, "bad triplet");
    }
    entries.push_back(e);
  }
  if (next_line()) throw ParseError(source, line_no, "more triplets than nnz");
  return SparseMatrix(rows, cols, std::move(entries));
}

void WriteIdList(std::ostream &out, const std::vector<std::string> &ids) {
  for (const auto &id : ids) out << id << '\n';
}

std::vector<std::string> ReadIdList(std::istream &in) {
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

std::size_t DocConceptMatrix::ConceptIndex(const ConceptId &id) const {
  auto it = std::lower_bound(concept_ids.begin(), concept_ids.end(), id);
  if (it == concept_ids.end() || *it != id) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(it - concept_ids.begin());
}

DocConceptMatrix BuildDocConceptMatrix(const Corpus &corpus,
                                       const std::vector<Mention> &mentions,
                                       const Lexicon &lexicon) {
  // (doc, lexicon position) -> count
  std::vector<std::pair<std::size_t, std::size_t>> hits;
  std::vector<bool> observed(lexicon.size(), false);
  for (const Mention &m : mentions) {
    std::size_t d = corpus.IndexOf(m.doc_id);
    if (d == Corpus::npos) {
      throw ValidationError("mention references unknown document '" + m.doc_id + "'");
    }
    std::size_t c = lexicon.IndexOf(m.concept_id);
    if (c == Lexicon::npos) {
      throw ValidationError("mention references unknown concept " + m.concept_id);
    }
    if (m.filtered) continue;
    hits.emplace_back(d, c);
    observed[c] = true;
  }

  DocConceptMatrix x;
  x.doc_ids.reserve(corpus.size());
  for (const Document &doc : corpus.docs()) x.doc_ids.push_back(doc.id);
  std::vector<std::size_t> column(lexicon.size(), 0);
  for (std::size_t c = 0; c < lexicon.size(); ++c) {
    if (!observed[c]) continue;
    column[c] = x.concept_ids.size();
    x.concept_ids.push_back(lexicon.concepts()[c].id);
  }
  std::vector<MatrixEntry> entries;
  entries.reserve(hits.size());
  for (auto [d, c] : hits) entries.push_back({d, column[c], 1});
  x.counts = SparseMatrix(x.n_docs(), x.m_concepts(), std::move(entries));
  return x;
}

CoocMatrix BuildCoocMatrix(const DocConceptMatrix &x, int threads) {
  const std::size_t n = x.n_docs();
  const std::size_t m = x.m_concepts();
  using Partial = std::unordered_map<std::uint64_t, std::int64_t>;
  auto count = [&](std::size_t begin, std::size_t end, Partial &out) {
    for (std::size_t d = begin; d < end; ++d) {
      auto row = x.counts.Row(d);
      for (std::size_t a = 0; a < row.size(); ++a) {
        for (std::size_t b = a; b < row.size(); ++b) {
          ++out[static_cast<std::uint64_t>(row[a].col) * m + row[b].col];
        }
      }
    }
  };
  std::size_t workers = std::clamp<std::size_t>(threads > 0 ? threads : 1, 1,
                                                std::max<std::size_t>(n, 1));
  std::vector<Partial> partials(workers);
  if (workers == 1) {
    count(0, n, partials[0]);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(count, n * w / workers, n * (w + 1) / workers,
                        std::ref(partials[w]));
    }
  }
  std::vector<MatrixEntry> entries;
  for (const Partial &p : partials) {
    for (auto [key, value] : p) {
      std::size_t i = key / m, j = key % m;
      entries.push_back({i, j, value});
      if (i != j) entries.push_back({j, i, value});
    }
  }
  CoocMatrix cooc;
  cooc.concept_ids = x.concept_ids;
  cooc.counts = SparseMatrix(m, m, std::move(entries));
  return cooc;
}

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error("cosine similarity of vectors with dimensions " +
                std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  // sqrt(na * nb) rather than sqrt(na) * sqrt(nb): identical and opposite
  // vectors then give exactly +1 and -1.
  double denom = std::sqrt(na * nb);
  if (!std::isfinite(denom) || denom == 0) denom = std::sqrt(na) * std::sqrt(nb);
  return std::clamp(dot / denom, -1.0, 1.0);
}

Vector ConceptEmbedding(const CoocMatrix &cooc, std::size_t i, bool normalized) {
  if (i >= cooc.m_concepts()) {
    throw ValidationError("concept index " + std::to_string(i) + " out of range");
  }
  Vector v(cooc.m_concepts(), 0.0);
  for (const MatrixEntry &e : cooc.counts.Row(i)) v[e.col] = static_cast<double>(e.value);
  if (normalized) {
    double norm = 0;
    for (double value : v) norm += value * value;
    if (norm > 0) {
      norm = std::sqrt(norm);
      for (double &value : v) value /= norm;
    }
  }
  return v;
}

Vector DocumentContextVector(const DocConceptMatrix &x,
                             std::span<const Vector> embeddings, std::size_t doc,
                             std::optional<std::size_t> exclude) {
  if (doc >= x.n_docs()) {
    throw ValidationError("document index " + std::to_string(doc) + " out of range");
  }
  if (embeddings.size() != x.m_concepts()) {
    throw ValidationError("expected " + std::to_string(x.m_concepts()) +
                          " embeddings, got " + std::to_string(embeddings.size()));
  }
  if (exclude && *exclude >= x.m_concepts()) {
    throw ValidationError("concept index " + std::to_string(*exclude) + " out of range");
  }
  const std::size_t dim = embeddings.empty() ? 0 : embeddings.front().size();
  Vector context(dim, 0.0);
  for (const MatrixEntry &e : x.counts.Row(doc)) {
    if (exclude && e.col == *exclude) continue;
    const Vector &emb = embeddings[e.col];
    if (emb.size() != dim) throw ValidationError("embeddings differ in dimension");
    const double weight = static_cast<double>(e.value);
    for (std::size_t k = 0; k < dim; ++k) context[k] += weight * emb[k];
  }
  return context;
}

}  // namespace acenlp
