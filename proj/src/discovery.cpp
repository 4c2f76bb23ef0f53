#include "tin/discovery.hpp"

#include <exception>

#include "tin/estimators.hpp"
#include "tin/oracle.hpp"

namespace tin {

OrderingEstimate estimate_group_ordering(const Dataset& data, const std::string& estimator,
                                         const EstimatorParams& params) {
  data.validate();
  params.validate();
  const Estimator est = estimator_by_name(estimator);
  const int n = data.cols();
  if (n < 2) throw std::invalid_argument("ordering needs at least two variables");
  OrderingEstimate out;
  out.ords.assign(n, 0);
  out.results.assign(n, {});
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      std::vector<int> z{i}, y;
      for (int j = 0; j < n; ++j)
        if (j != i) y.push_back(j);
      EstimatorParams p = params;
      p.seed = derive_seed(params.seed, {static_cast<std::uint64_t>(i)});
      out.results[i] = est(data.samples, z, y, p);
      out.ords[i] = out.results[i].value;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  out.ordering = group_by_key(out.ords);
  return out;
}

std::vector<int> oracle_ords(const LinearScm& scm) {
  const int n = scm.size();
  std::vector<int> ords(n);
  for (int i = 0; i < n; ++i) ords[i] = tin_oracle(scm, {i}, VertexSet::range(n) - VertexSet{i}).value;
  return ords;
}

GroupOrdering oracle_group_ordering(const LinearScm& scm) { return group_by_key(oracle_ords(scm)); }

}  // namespace tin
