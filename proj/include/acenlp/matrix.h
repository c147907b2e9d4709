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

#ifndef ACENLP_MATRIX_H_
#define ACENLP_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acenlp/corpus.h"
#include "acenlp/lexicon.h"
#include "acenlp/ner.h"

namespace acenlp {

using Vector = std::vector<double>;

struct MatrixEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  std::int64_t value = 0;

  bool operator==(const MatrixEntry &) const = default;
};

// Sparse integer matrix in compressed-row form. Zeros are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  // Entries may come in any order; duplicates are summed and zeros dropped.
  // Throws ValidationError on an index outside the shape.
  SparseMatrix(std::size_t rows, std::size_t cols,
               std::vector<MatrixEntry> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }

  // All entries, sorted by (row, col).
  const std::vector<MatrixEntry> &entries() const { return entries_; }
  std::span<const MatrixEntry> Row(std::size_t r) const;
  std::int64_t At(std::size_t r, std::size_t c) const;

  bool operator==(const SparseMatrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           entries_ == other.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MatrixEntry> entries_;
  std::vector<std::size_t> row_offsets_{0};
};

// Text triplet format: header `rows cols nnz`, then `row col value` lines
// sorted by (row, col).
void WriteSparseMatrix(std::ostream &out, const SparseMatrix &matrix);
SparseMatrix ReadSparseMatrix(std::istream &in,
                              const std::string &source = "<matrix>");

// One id per line.
void WriteIdList(std::ostream &out, const std::vector<std::string> &ids);
std::vector<std::string> ReadIdList(std::istream &in);

// n x m counts of unfiltered mentions. Rows follow corpus order; columns are
// the concepts observed at least once, in lexicon order.
struct DocConceptMatrix {
  std::vector<std::string> doc_ids;
  std::vector<ConceptId> concept_ids;
  SparseMatrix counts;

  std::size_t n_docs() const { return doc_ids.size(); }
  std::size_t m_concepts() const { return concept_ids.size(); }
  // Column of the concept, or npos.
  std::size_t ConceptIndex(const ConceptId &id) const;

  bool operator==(const DocConceptMatrix &) const = default;
};

// m x m document co-occurrence: entry (i, j) is the number of documents that
// mention both concept i and concept j. The diagonal is document frequency.
struct CoocMatrix {
  std::vector<ConceptId> concept_ids;
  SparseMatrix counts;

  std::size_t m_concepts() const { return concept_ids.size(); }

  bool operator==(const CoocMatrix &) const = default;
};

// Throws ValidationError when a mention names a document absent from the
// corpus or a concept absent from the lexicon. Filtered mentions are
// ignored.
DocConceptMatrix BuildDocConceptMatrix(const Corpus &corpus,
                                       const std::vector<Mention> &mentions,
                                       const Lexicon &lexicon);

// Documents are split over `threads` workers and the partial counts summed.
CoocMatrix BuildCoocMatrix(const DocConceptMatrix &x, int threads = 1);

// dot(a, b) / (|a| |b|), clamped to [-1, 1]. Zero when either vector has
// zero norm. Throws Error on a dimension mismatch.
double CosineSimilarity(std::span<const double> a, std::span<const double> b);

// Row i of the co-occurrence matrix as a dense vector, optionally scaled to
// unit length. Zero rows are returned as-is.
Vector ConceptEmbedding(const CoocMatrix &cooc, std::size_t i, bool normalized);

// Count-weighted sum of the embeddings of the concepts present in document
// `doc`, leaving out `exclude`. Zero vector when nothing remains.
Vector DocumentContextVector(const DocConceptMatrix &x,
                             std::span<const Vector> embeddings, std::size_t doc,
                             std::optional<std::size_t> exclude = std::nullopt);

}  // namespace acenlp

#endif  // ACENLP_MATRIX_H_
