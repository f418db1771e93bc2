pub mod algebra;
pub mod heights;
pub mod ellcurve;
pub mod io;
pub mod kodaira;
pub mod mestre;
pub mod qsearch;
pub mod surfcount;
pub mod verify;
