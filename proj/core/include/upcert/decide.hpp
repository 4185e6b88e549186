#pragma once

#include <optional>
#include <string>
#include <vector>

#include "upcert/identity.hpp"
#include "upcert/structure.hpp"

namespace upcert {

enum class FieldKind { Complex, Padic };
enum class FunctionClass { Meromorphic, Entire };

struct Query {
  FieldKind field = FieldKind::Complex;
  FunctionClass function_class = FunctionClass::Meromorphic;
};

enum class Status { Proven, Refuted, Unknown };

struct CertificateEntry {
  std::string condition;
  std::string value;
  bool ok = false;
  friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

/// One rule the engine tried without reaching a decision, with the reason.
struct Attempt {
  std::string theorem;
  std::string outcome;
  friend bool operator==(const Attempt&, const Attempt&) = default;
};

struct Verdict {
  Status status = Status::Unknown;
  std::string theorem_id;  // empty for Unknown
  Query query;
  /// Which property the deciding rule settled: "UPM" or "UPE".
  std::string property;
  std::vector<CertificateEntry> certificate;
  std::vector<Attempt> attempts;
  std::optional<WitnessPair> witness;
};

/// Outcome of a single rule evaluated in isolation.
enum class RuleOutcome { Proven, Refuted, Inapplicable, Undecided };

struct RuleResult {
  RuleOutcome outcome = RuleOutcome::Inapplicable;
  std::string property;  // "UPM" or "UPE" when decisive
  std::vector<CertificateEntry> certificate;
  std::string reason;    // first failing condition when not decisive
  std::optional<WitnessPair> witness;
};

struct DecideOptions {
  PrecisionConfig precision;
};

/// Applies every rule in priority order; `r` must be build_structure(p).
Verdict decide(const Poly& p, const StructureReport& r, const Query& q, const DecideOptions& options = {});

/// Re-runs the rule named in the verdict and compares status and certificate.
bool replay_certificate(const Poly& p, const StructureReport& r, const Verdict& v,
                        const DecideOptions& options = {});

// Individual rules. Each is a pure function of its inputs.
RuleResult check_thm_A(const StructureReport& r);
RuleResult check_thm_B(const StructureReport& r);
RuleResult check_quartic(const Poly& p, const StructureReport& r, const Query& q);
RuleResult check_thresholds_31_to_34(const StructureReport& r, const Query& q, const std::string& theorem);
/// Three columns with nonempty B_H2 and a multiple zero of P' (id Thm3_5).
RuleResult check_thm_3_7(const StructureReport& r, const Poly& p, const DecideOptions& options = {});
/// Three simple zeros of P' with conditions (a), (b), (c) (id Thm3_6).
RuleResult check_thm_3_6(const StructureReport& r, const Poly& p, const DecideOptions& options = {});
/// The q3 band for P' = (z-d1)^q1 (z-d2)^2 (z-d3)^q3 (id Thm3_7).
RuleResult check_thm_3_9(const StructureReport& r, const Query& q);
RuleResult check_tt8(const Poly& p, const StructureReport& r);

/// Exact comparison of q3 with (q1-2)/2 + sqrt(q1^2-4q1-4)/2: -1, 0 or +1.
int compare_with_band_upper(long q1, long q3);
/// The upper band end as exact text, e.g. "5/2 + 1/2*sqrt(17)".
std::string band_upper_text(long q1);

struct URSReport {
  bool applicable = false;
  std::string reason;  // when not applicable
  int n = 0;
  int k = 0;
  int p = 0;
  std::vector<int> m_list;  // descending
  /// Conditions (i) to (v) in order.
  std::vector<bool> conditions;
  std::string condition_hit;  // "i" .. "v" or empty
  std::string note;           // ambiguity flag for condition (iv)
  bool ursm_threshold_met = false;
  bool ursm_im_threshold_met = false;
  Status upm_status = Status::Unknown;
  /// "URSM-IM", "URSM", "not a URSM", or "undetermined".
  std::string conclusion;
  int cardinality = 0;
};

URSReport urs_check(const Poly& p, const StructureReport& r, const Verdict& upm);

std::string to_string(Status s);
std::string to_string(FieldKind f);
std::string to_string(FunctionClass c);

std::string render_verdict(const Poly& p, const Verdict& v, RenderFormat format);
std::string render_urs(const Poly& p, const URSReport& u, RenderFormat format);

}  // namespace upcert
