/*!
  \file block.hpp
  \brief Key-controlled locking blocks built from two Boolean functions.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "boolfunc.hpp"

namespace gantisat
{

/*! Final gate of the block: AND for type-0 (correct output 0),
    OR for type-1 (correct output 1). */
enum class BlockType
{
  type0,
  type1
};

/*! \brief How one side of a block is realized structurally.

  \c cover is a two-level sum of products over the XORed inputs; when
  \c invert is set the SOP output is complemented (the closed forms for
  complementary designs express one side as the inverse of the other).
  An empty cover means no structural form is known and synthesis falls
  back to a minterm expansion of the truth table.
*/
struct FuncImpl
{
  SopCover cover;
  bool invert = false;

  bool empty() const { return cover.empty(); }
};

/*! \brief A locking block: functions f and g behind per-side key XORs.

  Output is f(X xor K_f) op g(X xor K_g), with op AND (type-0) or
  OR (type-1).  The key vector is K_f || K_g, 2n bits.
*/
struct LockBlock
{
  int n = 1;
  BoolFunc f;
  BoolFunc g;
  BlockType type = BlockType::type0;
  FuncImpl f_impl;
  FuncImpl g_impl;

  bool correct_output() const { return type == BlockType::type1; }
};

inline bool block_eval( LockBlock const& block, uint32_t x, uint32_t k_f, uint32_t k_g )
{
  bool fv = block.f.eval( x ^ k_f );
  bool gv = block.g.eval( x ^ k_g );
  return block.type == BlockType::type0 ? ( fv && gv ) : ( fv || gv );
}

inline bool block_eval( LockBlock const& block, BitVec x, BitVec k_f, BitVec k_g )
{
  if ( x.width() != block.n || k_f.width() != block.n || k_g.width() != block.n )
    throw std::invalid_argument( "block_eval: width mismatch" );
  return block_eval( block, x.value(), k_f.value(), k_g.value() );
}

/*! Dual block: complemented functions behind the opposite final gate.
    Behaviorally the output is inverted for every (X, key). */
inline LockBlock dualize( LockBlock const& block )
{
  LockBlock d;
  d.n = block.n;
  d.f = ~block.f;
  d.g = ~block.g;
  d.type = block.type == BlockType::type0 ? BlockType::type1 : BlockType::type0;
  d.f_impl = { block.f_impl.cover, !block.f_impl.invert };
  d.g_impl = { block.g_impl.cover, !block.g_impl.invert };
  return d;
}

/*! Concatenated key value, K_f in the high n bits. */
inline uint64_t combine_key( uint32_t k_f, uint32_t k_g, int n )
{
  return ( uint64_t( k_f ) << n ) | k_g;
}

inline std::pair<uint32_t, uint32_t> split_key( uint64_t key, int n )
{
  return { uint32_t( key >> n ), uint32_t( key & width_mask( n ) ) };
}

/*! \brief A set of 2n-bit concatenated keys. */
struct KeySet
{
  int n = 1;
  std::vector<uint64_t> members; // sorted, unique

  bool contains( uint64_t k ) const
  {
    return std::binary_search( members.begin(), members.end(), k );
  }
  size_t size() const { return members.size(); }
};

} // namespace gantisat
