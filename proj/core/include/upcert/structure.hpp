#pragma once

#include <optional>
#include <string>
#include <vector>

#include "upcert/poly.hpp"
#include "upcert/roots.hpp"

namespace upcert {

struct CriticalPoint {
  RootEnclosure root;
  int q = 1;  // multiplicity as a zero of P'
  ComplexBall value_ball;
  std::optional<ExactScalar> exact_value;  // P(d) when d is exact
  int row = 0;                             // 1-based row of the table layout
};

struct ValueClass {
  std::vector<CriticalPoint> members;  // canonical order
  ComplexBall class_value;
  std::optional<ExactScalar> exact_value;
  int q_sum = 0;
};

/// Per-column filtered multiplicity sets; B and B_H2 hold member indices.
struct ColumnDerived {
  std::vector<int> A;     // descending
  std::vector<std::size_t> B;
  std::vector<int> A_H1;  // descending
  std::vector<int> A_H2;  // descending
  std::vector<std::size_t> B_H2;
  int n_i = 0;
};

struct Column {
  ValueClass value_class;
  ColumnDerived derived;
};

enum class Certification { Certified, UncertifiedNumeric };

struct StructureReport {
  Poly poly;
  int n = 0;  // degree of P
  int k = 0;  // distinct zeros of P'
  int s = 0;  // largest column
  std::vector<Column> columns;
  std::vector<int> row_sizes;  // r_1 <= ... <= r_s
  int t = 0;
  int t_prime = 0;
  bool is_cip = true;
  bool p_squarefree = true;
  Certification certification = Certification::Certified;
  long precision_used = 0;
};

/// Groups critical points by certified critical value. `d` is
/// critical_value_poly(P); refinement doubles the precision until the number of
/// overlap components equals deg squarefree(D), then the column q-sums are
/// checked against D's exponent multiset (InternalError on mismatch).
std::vector<ValueClass> cluster_critical_values(const Poly& p, std::vector<CriticalPoint> points, const Poly& d,
                                                const PrecisionConfig& config = {});

ColumnDerived compute_h_sets(const ValueClass& c);

/// Full table construction. A linear P gives k = 0 and empty tables.
StructureReport build_structure(const Poly& p, const PrecisionConfig& config = {});

enum class RenderFormat { text, json };
std::string render_tables(const StructureReport& r, RenderFormat format);

/// Inverse of the JSON rendering. Fields not in the document (root factors) are empty.
StructureReport parse_structure_json(const std::string& document);

/// Equality over every serialized field.
bool same_report(const StructureReport& a, const StructureReport& b);

/// Multiset of column q-lists, each sorted descending, in column order.
std::vector<std::vector<int>> column_q_lists(const StructureReport& r);

}  // namespace upcert
