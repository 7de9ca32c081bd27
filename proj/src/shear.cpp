#include "qtrace/shear.hpp"

#include <stdexcept>

namespace qtrace {

SpecPtr shear_spec(const Triangulation& T) { return make_spec(T.inner_labels(), inner_face_matrix(T), -8); }

SpecPtr skein_spec(const Triangulation& T) { return make_spec(T.labels(), vertex_matrix(T), 2); }

bool is_balanced(const Triangulation& T, const Exp& k) {
  if (k.size() != T.inner_edges().size()) throw std::invalid_argument("exponent must be over inner edges");
  for (std::size_t t = 0; t < T.num_triangles(); ++t) {
    long s = 0;
    for (int i = 0; i < 3; ++i) {
      int pos = T.inner_position(T.edge_at(static_cast<int>(t), i));
      if (pos >= 0) s += k[pos];
    }
    if (s % 2 != 0) return false;
  }
  return true;
}

BalancedSplit balanced_decompose(const Triangulation& T, const Exp& k) {
  if (!is_balanced(T, k)) throw std::invalid_argument("exponent vector is not balanced");
  BalancedSplit r{Exp(k.size(), 0), Exp(k.size(), 0)};
  for (std::size_t i = 0; i < k.size(); ++i) {
    r.parity[i] = ((k[i] % 2) + 2) % 2;
    r.even[i] = k[i] - r.parity[i];
  }
  return r;
}

EvenImageReport even_image_check(const Triangulation& T, const Exp& k) {
  EvenImageReport r;
  r.image = row_times(k, shear_matrix(T));
  r.balanced = is_balanced(T, k);
  r.even = true;
  for (long x : r.image)
    if (x % 2 != 0) r.even = false;
  return r;
}

TorusElement shear_to_skein(const Triangulation& T, const TorusElement& a) {
  return mlh_apply(shear_matrix(T), skein_spec(T), a, -4);
}

std::optional<Exp> skein_preimage(const Triangulation& T, const Exp& m) {
  Exp mp = row_times(m, vertex_matrix(T));
  Exp k;
  for (int e : T.inner_edges()) {
    if (mp[e] % 4 != 0) return std::nullopt;
    k.push_back(mp[e] / 4);
  }
  if (row_times(k, shear_matrix(T)) != m) return std::nullopt;
  return k;
}

}  // namespace qtrace
