/*!
  \file truthsets.hpp
  \brief Distance-set algebra and the two locking-block constraints.

  Resistance and right-key existence of a two-function locking block are
  decided from the binary distance structure of its true sets (false sets
  for type-1 blocks).  All operations here are pure.
*/

#pragma once

#include <optional>
#include <unordered_map>
#include <utility>

#include "block.hpp"

namespace gantisat
{

/*! \brief Distances from \p s to every other element of \p S.

  Never contains zero.  \p s must be a member of \p S.
*/
inline TruthSet distance_set( TruthSet const& S, BitVec s )
{
  if ( s.width() != S.width() )
    throw std::invalid_argument( "distance_set: width mismatch" );
  if ( !S.contains( s.value() ) )
    throw std::domain_error( "distance_set: element not in set" );
  std::vector<uint32_t> d;
  d.reserve( S.size() - 1 );
  for ( auto v : S.values() )
    if ( v != s.value() )
      d.push_back( v ^ s.value() );
  return TruthSet( S.width(), std::move( d ) );
}

/*! \brief Multiset of distances over all unordered pairs of \p S.

  Two sets are structurally equal when the value-to-multiplicity maps
  coincide; translating a set leaves its structure unchanged.
*/
inline DistanceMultiset distance_structure( TruthSet const& S )
{
  if ( S.empty() )
    throw std::domain_error( "distance_structure: empty set" );
  DistanceMultiset d( S.width() );
  auto const& v = S.values();
  for ( size_t i = 0; i < v.size(); ++i )
    for ( size_t j = i + 1; j < v.size(); ++j )
      d.add( v[i] ^ v[j] );
  return d;
}

/*! True/false-set pair a constraint check operates on: true sets for
    type-0 blocks, false sets for type-1. */
inline std::pair<TruthSet, TruthSet> relevant_sets( BoolFunc const& f, BoolFunc const& g,
                                                    BlockType type )
{
  if ( f.width() != g.width() )
    throw std::invalid_argument( "relevant_sets: width mismatch" );
  if ( type == BlockType::type0 )
    return { f.true_set(), g.true_set() };
  return { f.false_set(), g.false_set() };
}

/*! \brief Searches for a witness pair with disjoint distance sets.

  Returns the lexicographically smallest (F_w, G_w) over all pairs of the
  relevant sets such that the distances from F_w within f's set and from
  G_w within g's set share no value, or nullopt if no pair qualifies.
  A witness certifies that every input pattern excludes some key no other
  pattern excludes, forcing the oracle-guided attack through all 2^n
  patterns.
*/
inline std::optional<std::pair<BitVec, BitVec>>
check_constraint1( BoolFunc const& f, BoolFunc const& g, BlockType type )
{
  auto [fs, gs] = relevant_sets( f, g, type );
  if ( fs.empty() || gs.empty() )
    throw std::domain_error( "check_constraint1: empty relevant set" );
  int const n = f.width();

  // Distance sets from each g-side element, as membership tables.
  std::vector<std::vector<bool>> g_dist( gs.size() );
  for ( size_t j = 0; j < gs.size(); ++j )
  {
    g_dist[j].assign( size_t( pow2( n ) ), false );
    for ( auto v : gs.values() )
      if ( v != gs.values()[j] )
        g_dist[j][v ^ gs.values()[j]] = true;
  }

  for ( auto a : fs.values() )
  {
    std::vector<uint32_t> da;
    for ( auto v : fs.values() )
      if ( v != a )
        da.push_back( v ^ a );
    for ( size_t j = 0; j < gs.size(); ++j )
    {
      bool disjoint = true;
      for ( auto d : da )
        if ( g_dist[j][d] )
        {
          disjoint = false;
          break;
        }
      if ( disjoint )
        return std::make_pair( BitVec( n, a ), BitVec( n, gs.values()[j] ) );
    }
  }
  return std::nullopt;
}

/*! \brief All offsets K such that K_f xor K_g = K yields a right key.

  For type-0, K qualifies iff the f true set shifted by K avoids the g
  true set (duals for type-1): shifted false sets then cover the whole
  input space, so the block output is the correct constant everywhere.
  An empty result means the block has no right key at all.
*/
inline TruthSet right_key_offsets( BoolFunc const& f, BoolFunc const& g, BlockType type )
{
  auto [fs, gs] = relevant_sets( f, g, type );
  int const n = f.width();
  std::vector<uint32_t> offsets;
  for ( uint64_t k = 0; k < pow2( n ); ++k )
    if ( fs.translate_disjoint( uint32_t( k ), gs ) )
      offsets.push_back( uint32_t( k ) );
  return TruthSet( n, std::move( offsets ) );
}

inline TruthSet right_key_offsets( LockBlock const& block )
{
  return right_key_offsets( block.f, block.g, block.type );
}

/*! \brief Right-key existence via translate search.

  True iff some translate of the f true set fits inside the g false set
  (duals for type-1).  A translate always carries the same distance
  structure, so this also certifies a distance-matched subset.
*/
inline bool check_constraint2( BoolFunc const& f, BoolFunc const& g, BlockType type )
{
  return !right_key_offsets( f, g, type ).empty();
}

/*! Exhaustive sweep: the block output equals the correct constant for
    every input under (k_f, k_g). */
inline bool is_right_key( LockBlock const& block, uint32_t k_f, uint32_t k_g )
{
  bool const correct = block.correct_output();
  for ( uint64_t x = 0; x < pow2( block.n ); ++x )
    if ( block_eval( block, uint32_t( x ), k_f, k_g ) != correct )
      return false;
  return true;
}

inline bool is_right_key( LockBlock const& block, BitVec k_f, BitVec k_g )
{
  if ( k_f.width() != block.n || k_g.width() != block.n )
    throw std::invalid_argument( "is_right_key: width mismatch" );
  return is_right_key( block, k_f.value(), k_g.value() );
}

/*! \brief Keys excluded by input \p x.

  Structured form: the wrong keys for x are exactly
  (x xor a) || (x xor b) over a in the f-side set and b in the g-side set
  (true sets for type-0, false sets for type-1).
*/
inline KeySet wrong_key_set( LockBlock const& block, BitVec x )
{
  if ( x.width() != block.n )
    throw std::invalid_argument( "wrong_key_set: width mismatch" );
  auto [fs, gs] = relevant_sets( block.f, block.g, block.type );
  KeySet ks;
  ks.n = block.n;
  ks.members.reserve( fs.size() * gs.size() );
  for ( auto a : fs.values() )
    for ( auto b : gs.values() )
      ks.members.push_back( combine_key( x.value() ^ a, x.value() ^ b, block.n ) );
  std::sort( ks.members.begin(), ks.members.end() );
  return ks;
}

/*! Number of keys appearing in exactly one wrong-key set, per input.
    Helper shared by the distinct-element and disjointness checks. */
namespace detail
{
inline std::unordered_map<uint64_t, uint32_t> wrong_key_occurrences( LockBlock const& block )
{
  auto [fs, gs] = relevant_sets( block.f, block.g, block.type );
  std::unordered_map<uint64_t, uint32_t> occ;
  occ.reserve( fs.size() * gs.size() * 4 );
  for ( uint64_t x = 0; x < pow2( block.n ); ++x )
    for ( auto a : fs.values() )
      for ( auto b : gs.values() )
        ++occ[combine_key( uint32_t( x ) ^ a, uint32_t( x ) ^ b, block.n )];
  return occ;
}
} // namespace detail

/*! \brief Whether every wrong-key set owns a key no other set contains.

  This is the relaxed exclusion property: each input pattern excludes at
  least one wrong key unique to it.  Exhaustive over all 2^n sets;
  capped at n <= 8.
*/
inline bool has_distinct_elements( LockBlock const& block )
{
  if ( block.n > 8 )
    throw std::length_error( "has_distinct_elements: exhaustive check capped at n <= 8" );
  auto occ = detail::wrong_key_occurrences( block );
  auto [fs, gs] = relevant_sets( block.f, block.g, block.type );
  if ( fs.empty() || gs.empty() )
    return false;
  for ( uint64_t x = 0; x < pow2( block.n ); ++x )
  {
    bool found = false;
    for ( auto a : fs.values() )
    {
      for ( auto b : gs.values() )
        if ( occ[combine_key( uint32_t( x ) ^ a, uint32_t( x ) ^ b, block.n )] == 1 )
        {
          found = true;
          break;
        }
      if ( found )
        break;
    }
    if ( !found )
      return false;
  }
  return true;
}

/*! All wrong-key sets pairwise disjoint (every wrong key is excluded by
    exactly one input pattern). */
inline bool wrong_key_sets_disjoint( LockBlock const& block )
{
  if ( block.n > 8 )
    throw std::length_error( "wrong_key_sets_disjoint: exhaustive check capped at n <= 8" );
  for ( auto const& [key, count] : detail::wrong_key_occurrences( block ) )
    if ( count > 1 )
      return false;
  return true;
}

} // namespace gantisat
