/*!
  \file blockgen.hpp
  \brief K-map-driven construction of locking blocks and their key families.

  A block is laid out on a 2^{n-t} x 2^t map: the top t bits of a cell
  index label its column, the low n-t bits its row.  The non-complementary
  builder takes one column as the f true set and all-but-two columns plus
  one shared cell as the g true set; the complementary builder splits the
  map along a dividing column.  Closed-form covers follow the cell
  labels, with literals complemented wherever a chosen label bit is 1.
*/

#pragma once

#include <numeric>
#include <sstream>
#include <string>

#include "rational.hpp"
#include "truthsets.hpp"

namespace gantisat
{

/*! Thrown when a requested construction fails its own validity checks. */
class construction_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Valid key pairs of a block, given as the set of K_f xor K_g offsets.

  The family expands to exactly { (K_f, K_g) : K_f xor K_g in offsets };
  every expanded pair unlocks the block.
*/
struct RightKeyFamily
{
  int n = 1;
  TruthSet offsets;
  std::string description;

  bool contains( uint32_t k_f, uint32_t k_g ) const { return offsets.contains( k_f ^ k_g ); }
  uint64_t count() const { return uint64_t( offsets.size() ) << n; }
};

/*! \brief Parameters of the non-complementary construction. */
struct NonCompSpec
{
  int n = 4;
  int t = 2;                            //!< column-label width, 2 <= t <= n-1
  uint32_t f_column = 0;                //!< t-bit label of the f column
  uint32_t common_row = 0;              //!< (n-t)-bit row of the cell shared with g
  int q = 2;                            //!< literal index in [n-t, n-1] marking the excluded partner column
  std::vector<uint32_t> included_columns; //!< empty = all columns except f_column and its bit-q partner

  uint32_t partner_column() const { return f_column ^ ( 1u << ( q - ( n - t ) ) ); }

  void validate() const
  {
    if ( n < 3 || n > max_width )
      throw std::invalid_argument( "NonCompSpec: n out of range [3, 24]" );
    if ( t < 2 || t > n - 1 )
      throw std::invalid_argument( "NonCompSpec: t out of range [2, n-1]" );
    if ( q < n - t || q > n - 1 )
      throw std::invalid_argument( "NonCompSpec: q out of range [n-t, n-1]" );
    if ( f_column >= ( 1u << t ) )
      throw std::invalid_argument( "NonCompSpec: f_column exceeds 2^t" );
    if ( common_row >= ( 1u << ( n - t ) ) )
      throw std::invalid_argument( "NonCompSpec: common_row exceeds 2^{n-t}" );
    for ( auto c : included_columns )
    {
      if ( c >= ( 1u << t ) )
        throw std::invalid_argument( "NonCompSpec: included column exceeds 2^t" );
      if ( c == f_column || c == partner_column() )
        throw std::invalid_argument( "NonCompSpec: included columns must exclude the f column and its bit-q partner" );
    }
  }
};

/*! \brief Parameters of the complementary construction. */
struct CompSpec
{
  int n = 4;
  int t = 1;                 //!< 1 <= t <= n-1
  uint32_t dividing_column = 0;
  uint32_t g_cell_row = 0;   //!< row of the dividing-column cell handed to g

  void validate() const
  {
    if ( n < 2 || n > max_width )
      throw std::invalid_argument( "CompSpec: n out of range [2, 24]" );
    if ( t < 1 || t > n - 1 )
      throw std::invalid_argument( "CompSpec: t out of range [1, n-1]" );
    if ( dividing_column >= ( 1u << t ) )
      throw std::invalid_argument( "CompSpec: dividing_column exceeds 2^t" );
    if ( g_cell_row >= ( 1u << ( n - t ) ) )
      throw std::invalid_argument( "CompSpec: g_cell_row exceeds 2^{n-t}" );
  }
};

namespace detail
{

inline uint32_t cell_of( int n, int t, uint32_t column, uint32_t row )
{
  return ( column << ( n - t ) ) | row;
}

/*! Product term selecting one whole column. */
inline Cube column_cube( int n, int t, uint32_t column )
{
  uint32_t const label_mask = width_mask( t ) << ( n - t );
  return Cube{ label_mask, column << ( n - t ) };
}

inline void verify_block( LockBlock const& block, TruthSet& offsets_out, char const* what )
{
  if ( !check_constraint1( block.f, block.g, block.type ) )
    throw construction_error( std::string( what ) + ": constructed block violates the distance-set disjointness constraint" );
  offsets_out = right_key_offsets( block );
  if ( offsets_out.empty() )
    throw construction_error( std::string( what ) + ": constructed block admits no right key" );
}

} // namespace detail

/*! \brief Builds a non-complementary block from a column/cell selection.

  The f true set is the chosen column (2^{n-t} cells).  The g true set is
  every cell of the included columns plus the common cell.  With the
  default column choice, |G^T| = 2^n - 2^{n-t+1} + 1 and the right keys
  are exactly the pairs that agree on bits n-t..n-1 except for a flip in
  bit q, with the low n-t bits free.
*/
inline std::pair<LockBlock, RightKeyFamily> build_noncomplementary( NonCompSpec const& spec )
{
  spec.validate();
  int const n = spec.n, t = spec.t;
  uint32_t const partner = spec.partner_column();

  std::vector<uint32_t> included = spec.included_columns;
  bool const default_columns = included.empty();
  if ( default_columns )
  {
    for ( uint32_t c = 0; c < ( 1u << t ); ++c )
      if ( c != spec.f_column && c != partner )
        included.push_back( c );
  }

  LockBlock block;
  block.n = n;
  block.type = BlockType::type0;

  // f: indicator of the chosen column.
  block.f_impl.cover = { detail::column_cube( n, t, spec.f_column ) };
  block.f = BoolFunc::from_cover( n, block.f_impl.cover );

  // g: included columns, plus the common cell.  The common cell merges
  // into a (t - (t-1))-literal term whenever every non-f column it would
  // sweep is already included; otherwise it stays a lone minterm.
  SopCover g_cover;
  int const qbit = spec.q - ( n - t );
  bool const f_col_q = ( spec.f_column >> qbit ) & 1u;
  if ( default_columns )
  {
    // One single-literal term per non-q label bit differing from the f column.
    for ( int j = 0; j < t; ++j )
    {
      if ( j == qbit )
        continue;
      uint32_t const pos = 1u << ( n - t + j );
      bool const f_bit = ( spec.f_column >> j ) & 1u;
      g_cover.push_back( Cube{ pos, f_bit ? 0u : pos } );
    }
  }
  else
  {
    for ( auto c : included )
      g_cover.push_back( detail::column_cube( n, t, c ) );
  }

  // Columns the short common-cell term would sweep besides the f column.
  bool short_term_ok = true;
  for ( uint32_t c = 0; c < ( 1u << t ) && short_term_ok; ++c )
  {
    if ( c == spec.f_column || ( ( ( c >> qbit ) & 1u ) != f_col_q ) )
      continue;
    if ( std::find( included.begin(), included.end(), c ) == included.end() )
      short_term_ok = false;
  }
  uint32_t const row_mask = width_mask( n - t );
  if ( short_term_ok )
  {
    uint32_t const care = ( 1u << spec.q ) | row_mask;
    uint32_t const value = ( uint32_t( f_col_q ) << spec.q ) | spec.common_row;
    g_cover.push_back( Cube{ care, value } );
  }
  else
  {
    g_cover.push_back( Cube{ width_mask( n ), detail::cell_of( n, t, spec.f_column, spec.common_row ) } );
  }
  block.g_impl.cover = g_cover;
  block.g = BoolFunc::from_cover( n, g_cover );

  RightKeyFamily family;
  family.n = n;
  detail::verify_block( block, family.offsets, "build_noncomplementary" );

  std::ostringstream desc;
  if ( default_columns )
    desc << "K_f and K_g equal in bits " << ( n - t ) << ".." << ( n - 1 )
         << " except complementary in bit " << spec.q << "; bits 0.." << ( n - t - 1 ) << " free";
  else
    desc << "K_f xor K_g in the listed offset set";
  family.description = desc.str();
  return { std::move( block ), std::move( family ) };
}

/*! \brief Builds a complementary block by splitting the map at a column.

  The f true set is the dividing column minus the chosen cell
  (2^{n-t} - 1 cells); g is its complement.  Any K_f = K_g unlocks the
  block; the offset set is the stabilizer of the f true set, which is
  {0} here since the set has odd size.
*/
inline std::pair<LockBlock, RightKeyFamily> build_complementary( CompSpec const& spec )
{
  spec.validate();
  int const n = spec.n, t = spec.t;

  LockBlock block;
  block.n = n;
  block.type = BlockType::type0;

  SopCover g_cover;
  for ( int j = 0; j < t; ++j )
  {
    uint32_t const pos = 1u << ( n - t + j );
    bool const div_bit = ( spec.dividing_column >> j ) & 1u;
    g_cover.push_back( Cube{ pos, div_bit ? 0u : pos } );
  }
  g_cover.push_back( Cube{ width_mask( n - t ), spec.g_cell_row } );

  block.g_impl.cover = g_cover;
  block.g = BoolFunc::from_cover( n, g_cover );
  block.f_impl = { g_cover, true };
  block.f = ~block.g;

  RightKeyFamily family;
  family.n = n;
  detail::verify_block( block, family.offsets, "build_complementary" );
  family.description = "any K_f = K_g (offsets are the stabilizer of the f true set)";
  return { std::move( block ), std::move( family ) };
}

/*! \brief The all-input AND/NAND block: |F^T| = 1, g complementary. */
inline std::pair<LockBlock, RightKeyFamily> build_antisat( int n, BlockType type = BlockType::type0 )
{
  if ( n < 2 || n > max_width )
    throw std::invalid_argument( "build_antisat: n out of range [2, 24]" );

  LockBlock block;
  block.n = n;
  block.type = BlockType::type0;
  Cube const all_ones{ width_mask( n ), width_mask( n ) };
  block.f_impl = { { all_ones }, false };
  block.g_impl = { { all_ones }, true };
  block.f = BoolFunc::from_cover( n, block.f_impl.cover );
  block.g = ~block.f;
  if ( type == BlockType::type1 )
    block = dualize( block );

  RightKeyFamily family;
  family.n = n;
  detail::verify_block( block, family.offsets, "build_antisat" );
  family.description = "any K_f = K_g";
  return { std::move( block ), std::move( family ) };
}

/*! \brief Complementary block whose f true set is {0, .., p-1}.

  Cascaded AND/OR locking is this construction.  The distance-set
  constraint is not guaranteed for arbitrary p and is verified on every
  call; violations (e.g. even p at n = 4) raise construction_error.
*/
inline std::pair<LockBlock, RightKeyFamily> build_consecutive_complementary( int n, uint64_t p )
{
  if ( n < 2 || n > max_width )
    throw std::invalid_argument( "build_consecutive_complementary: n out of range [2, 24]" );
  if ( p < 1 || p > pow2( n ) - 1 )
    throw std::invalid_argument( "build_consecutive_complementary: p out of range [1, 2^n - 1]" );

  LockBlock block;
  block.n = n;
  block.type = BlockType::type0;
  block.f = BoolFunc( n );
  for ( uint64_t x = 0; x < p; ++x )
    block.f.set( uint32_t( x ) );
  block.g = ~block.f;

  if ( !check_constraint1( block.f, block.g, block.type ) )
    throw construction_error( "build_consecutive_complementary: constraint violated for p = " + std::to_string( p ) );

  RightKeyFamily family;
  family.n = n;
  family.offsets = right_key_offsets( block );
  if ( family.offsets.empty() )
    throw construction_error( "build_consecutive_complementary: no right key for p = " + std::to_string( p ) );
  family.description = "K_f xor K_g in the stabilizer of {0..p-1}";
  return { std::move( block ), std::move( family ) };
}

/*! Which of the two canonical constructions a prediction refers to. */
enum class BlockKind
{
  complementary,
  noncomplementary
};

/*! \brief Closed-form wrong-key error histogram of a canonical block. */
struct PredictedCorruptibility
{
  std::map<uint64_t, uint64_t> histogram; //!< error count -> number of wrong keys
  uint64_t right_keys = 0;
  Rational average;          //!< exact mean error over wrong keys, from the histogram
  Rational average_estimate; //!< leading-order closed form (2^{n-t} minus a correction)
};

namespace detail
{
inline Rational pow2_rational( int e )
{
  if ( e >= 0 )
    return Rational( int64_t( 1 ) << e );
  return Rational( 1, int64_t( 1 ) << ( -e ) );
}
} // namespace detail

/*! \brief Predicted histogram for the canonical builders with full columns.

  Complementary: 2^{2n} - 2^{2n-t} keys err on 2^{n-t} - 1 patterns and
  2^{2n-t} - 2^n keys on one; 2^n right keys.  Non-complementary:
  2^{2n} - 2^{2n-t+1} keys err on 2^{n-t} patterns and 2^{2n-t} on one;
  2^{2n-t} right keys.  The exact average is derived from the histogram;
  the closed-form estimate drops lower-order terms.
*/
inline PredictedCorruptibility predict_corruptibility( int n, int t, BlockKind kind )
{
  PredictedCorruptibility p;
  if ( kind == BlockKind::complementary )
  {
    if ( n < 2 || t < 1 || t > n - 1 )
      throw std::invalid_argument( "predict_corruptibility: t out of range [1, n-1]" );
    uint64_t const high_e = pow2( n - t ) - 1;
    p.histogram[high_e] += pow2( 2 * n ) - pow2( 2 * n - t );
    p.histogram[1] += pow2( 2 * n - t ) - pow2( n );
    p.right_keys = pow2( n );
    p.average_estimate = detail::pow2_rational( n - t ) + detail::pow2_rational( n - 2 * t ) * Rational( -1 );
  }
  else
  {
    if ( n < 3 || t < 2 || t > n - 1 )
      throw std::invalid_argument( "predict_corruptibility: t out of range [2, n-1]" );
    p.histogram[pow2( n - t )] += pow2( 2 * n ) - pow2( 2 * n - t + 1 );
    p.histogram[1] += pow2( 2 * n - t );
    p.right_keys = pow2( 2 * n - t );
    p.average_estimate = detail::pow2_rational( n - t ) + detail::pow2_rational( n - 2 * t + 1 ) * Rational( -1 );
  }
  __int128 sum = 0, wrong = 0;
  for ( auto const& [e, c] : p.histogram )
  {
    sum += __int128( e ) * c;
    wrong += c;
  }
  p.average = Rational::from_wide( sum, wrong );
  return p;
}

/*! Minimum number of oracle-guided iterations for a complementary block
    with true-set cardinality \p p, as the exact rational
    (2^{2n} - 2^n) / (p (2^n - p)). */
inline Rational lambda_lower_bound( int n, uint64_t p )
{
  if ( n < 1 || n > max_width )
    throw std::invalid_argument( "lambda_lower_bound: n out of range" );
  if ( p < 1 || p > pow2( n ) - 1 )
    throw std::invalid_argument( "lambda_lower_bound: p out of range [1, 2^n - 1]" );
  __int128 const num = __int128( pow2( 2 * n ) ) - pow2( n );
  __int128 const den = __int128( p ) * ( pow2( n ) - p );
  return Rational::from_wide( num, den );
}

} // namespace gantisat
