//! Subgroups of free groups and of free products of finite groups, computed
//! through wreath-product embeddings.
//!
//! A subgroup `H` is described as the preimage of a subgroup of a finite
//! permutation group (see [`action`]). From there the crate builds Schreier
//! transversals and free bases ([`schreier`]), Kurosh systems and Kurosh
//! decompositions ([`kurosh`]), and the standard embedding into a wreath
//! product ([`wreath`]). Each construction ships with a checker that replays
//! the corresponding extension argument on concrete finite targets.

#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod cli;
pub mod fingrp;
pub mod group;
pub mod kurosh;
pub mod report;
pub mod sample;
pub mod schreier;
pub mod words;
pub mod wreath;
