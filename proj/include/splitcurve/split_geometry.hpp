#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace splitcurve {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Numerical thresholds. Residuals are relative (scale-free).
struct Tolerances {
  double containment = 1e-8;  // point on hyperplane, point on curve
  double tangency = 1e-8;     // normalized discriminant of a restricted polynomial
  double clustering = 1e-6;   // two points / parameters are the same
  double uniqueness = 1e-3;   // configurations are different

  void validate() const;
};

/// t -> frame * (1, t, ..., t^(g-1)).
class RationalNormalCurve {
 public:
  explicit RationalNormalCurve(CMat frame);

  int dim() const { return static_cast<int>(frame_.rows()); }
  const CMat& frame() const { return frame_; }
  double condition_number() const { return condition_; }

  CVec point(cplx t) const;
  CVec tangent(cplx t) const;
  /// Coefficients (ascending) of t -> h . point(t).
  CVec restrict(const CVec& covector) const { return frame_.transpose() * covector; }

 private:
  CMat frame_;
  double condition_ = 0.0;
};

/// Two rational normal curves in P^(g-1) meeting at g+1 nodes;
/// node i is components[0].point(node_params[0][i]) ~ components[1].point(node_params[1][i]).
struct ProjectiveSplitCurve {
  std::array<RationalNormalCurve, 2> components;
  std::array<std::vector<cplx>, 2> node_params;

  int genus() const { return components[0].dim(); }
  int node_count() const { return static_cast<int>(node_params[0].size()); }
  CVec node(int i) const;
  std::vector<CVec> nodes() const;
};

/// Component 0 is the moment curve; component 1 is its image under the unique
/// projectivity sending the point at s_i to the point at t_i.
ProjectiveSplitCurve build_split_curve(int genus, const std::vector<cplx>& t, const std::vector<cplx>& s,
                                       const Tolerances& tol = {});
/// Seeded random parameters in the box [-1.5, 1.5]^2 of the complex plane.
ProjectiveSplitCurve random_split_curve(int genus, std::uint64_t seed, const Tolerances& tol = {});

struct HyperplaneEntry {
  CVec covector;
  std::int64_t multiplicity = 1;
  int type = -1;  // stratum: number of nodes the hyperplane is built through
};

struct HyperplaneConfiguration {
  int dim = 0;
  std::vector<HyperplaneEntry> entries;

  std::int64_t total_degree() const;
  std::vector<HyperplaneEntry> with_multiplicity(std::int64_t m) const;
  nlohmann::json to_json() const;
  static HyperplaneConfiguration from_json(const nlohmann::json& j);
};

/// Unit norm with the first non-negligible coordinate real and positive.
CVec normalize_covector(const CVec& h);
/// sqrt(1 - |<a,b>|^2 / (|a|^2 |b|^2)): zero iff a and b are proportional.
double projective_distance(const CVec& a, const CVec& b);
/// |h . p| / (|h| |p|).
double incidence_residual(const CVec& h, const CVec& p);

/// Min-sum matching of entries within equal multiplicities; returns the
/// largest matched distance (infinity if the strata sizes differ).
double configuration_distance(const HyperplaneConfiguration& a, const HyperplaneConfiguration& b);

/// Hyperplanes through each (g-1)-subset of nodes.
HyperplaneConfiguration theta_type_g1(const ProjectiveSplitCurve& x, const Tolerances& tol = {});
/// The four hyperplanes through the given g-3 nodes tangent to both components.
std::vector<CVec> common_tangent_hyperplanes(const ProjectiveSplitCurve& x, const std::vector<int>& subset,
                                             const Tolerances& tol = {});
/// Theta-hyperplanes through g-3 nodes, 4 per subset, checked for theta-genericity.
HyperplaneConfiguration theta_type_g3(const ProjectiveSplitCurve& x, const Tolerances& tol = {});
HyperplaneConfiguration theta_hat(const ProjectiveSplitCurve& x, const Tolerances& tol = {});

/// Degenerate configuration of a hyperelliptic split curve whose canonical
/// image is the moment curve with nodes at `params`.
HyperplaneConfiguration theta_hat_hyperelliptic(int genus, const std::vector<cplx>& params,
                                                const Tolerances& tol = {});

/// Normalized discriminant of the restriction of h to a component after
/// dividing out the given node parameters; zero iff the residual quadratic has a double root.
double tangency_residual(const RationalNormalCurve& c, const CVec& h, const std::vector<cplx>& divide_out);

/// Number of (unweighted) entries through each point.
std::vector<int> incidence_counts(const std::vector<HyperplaneEntry>& planes, const std::vector<CVec>& points,
                                  double tol);

std::vector<CVec> recover_nodes(const HyperplaneConfiguration& config, int genus, const Tolerances& tol = {});

/// Projection from the nodes in `subset`; a split curve of genus g - |subset|.
/// `basis` receives the g x (g-|subset|) annihilator used as coordinates (x -> basis^T x).
ProjectiveSplitCurve project_from_nodes(const ProjectiveSplitCurve& x, const std::vector<int>& subset, CMat* basis);

/// Symmetric 3x3 matrices; unordered pair.
struct ConicPair {
  Eigen::Matrix3cd first;
  Eigen::Matrix3cd second;
};

/// The two conics through four plane points tangent to four lines.
ConicPair reconstruct_g3(const std::vector<Eigen::Vector3cd>& lines, const std::vector<Eigen::Vector3cd>& nodes,
                         const Tolerances& tol = {});

/// Scale-free distance between conics (symmetric matrices up to a scalar).
double conic_distance(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b);
Eigen::Matrix3cd conic_of(const RationalNormalCurve& c);

/// Per-node count of type-(g-3) entries through each node.
std::vector<int> mu0_signature(const HyperplaneConfiguration& config, const std::vector<CVec>& nodes, int genus,
                               double tol);

struct G4Reconstruction {
  ProjectiveSplitCurve curve;
  std::vector<CVec> nodes;
  std::array<Eigen::Matrix4cd, 2> cones_first;   // cones over the conic pair seen from node 0
  std::array<Eigen::Matrix4cd, 2> cones_second;  // ... and from node 1, paired with cones_first
};

/// Recovers a genus-4 split curve from its configuration; throws
/// GenericityError for hyperelliptic (mu_0 signature) or degenerate input.
G4Reconstruction reconstruct_g4(const HyperplaneConfiguration& config, const Tolerances& tol = {});

/// Largest distance from sampled points of `truth` to the curve `candidate`.
double curve_deviation(const RationalNormalCurve& truth, const RationalNormalCurve& candidate, int samples,
                       std::uint64_t seed);

}  // namespace splitcurve
